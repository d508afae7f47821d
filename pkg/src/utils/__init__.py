"""
Module: Utilities
"""
