"""
Test suite for the deformed quantum mechanics toolkit.
"""
