"""
This module provides Monte-Carlo estimators of Steiner points and functional Steiner points.
"""
