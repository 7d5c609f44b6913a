"""
Numerical core: deformed special functions, calculus, quadrature and the model systems.
"""
