"""
Module: Figures of merit and Monte-Carlo estimates
"""
