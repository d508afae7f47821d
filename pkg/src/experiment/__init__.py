"""
Module: Experiment configuration and runners
"""
