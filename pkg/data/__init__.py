"""
Ciphertext storage for the SPCHS toolkit.
"""
