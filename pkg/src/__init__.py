"""
Module: Source root

Public Constants:
    VERSION (str): Version string recorded in every output header
"""

VERSION = "0.3.0"
