"""
This module provides instance generators, adaptive adversaries and instance serialization.
"""
