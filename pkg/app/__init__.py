"""
Application package for the intent-forge knowledge-based intent modeling system.
"""
