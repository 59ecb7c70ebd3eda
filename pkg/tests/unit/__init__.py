# Unit tests for hfold
