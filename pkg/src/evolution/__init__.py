"""
Module: Time evolution
"""
