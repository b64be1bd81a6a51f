"""
src — Application source package.
"""
