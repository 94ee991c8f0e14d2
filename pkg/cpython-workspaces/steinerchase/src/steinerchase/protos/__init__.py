"""
This module defines the protocols that chasers and adaptive adversaries adhere to.
"""
