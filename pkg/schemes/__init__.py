"""
SPCHS, PEKS, IBKEM and IBE schemes.
"""
