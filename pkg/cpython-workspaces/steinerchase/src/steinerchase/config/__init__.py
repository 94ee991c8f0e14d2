"""
This module provides an interface for managing configuration settings in steinerchase.
"""
