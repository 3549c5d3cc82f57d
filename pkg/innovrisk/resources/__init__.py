"""
Packaged data files.
"""
