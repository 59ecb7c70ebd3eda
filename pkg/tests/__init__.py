# __init__.py
# Tests package for hfold
