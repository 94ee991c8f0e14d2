"""
This module evaluates work functions and their concave conjugates through convex path programs.
"""
