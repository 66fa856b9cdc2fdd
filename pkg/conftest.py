# Puts the repository root on sys.path so the tests import the in-tree package.
