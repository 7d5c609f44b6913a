"""
Deformed quantum mechanics in fractional-dimensional space.
"""
