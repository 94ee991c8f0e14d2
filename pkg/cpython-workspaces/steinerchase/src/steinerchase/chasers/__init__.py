"""
This module provides the online chasing algorithms.
"""
