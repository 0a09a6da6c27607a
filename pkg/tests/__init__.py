"""
Test package for the splitplan library.
"""