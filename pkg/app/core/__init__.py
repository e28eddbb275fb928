"""
Core package for configuration and domain exceptions.
"""
