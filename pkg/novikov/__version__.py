"""
Contains nothing but the current version
of the package.
"""

version: str = '0.1.0'
