"""
Command-line front end for the deformed quantum mechanics data products.
"""
