# End-to-end tests for hfold
