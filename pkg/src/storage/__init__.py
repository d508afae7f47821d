"""
Module: Storage IOs
"""
