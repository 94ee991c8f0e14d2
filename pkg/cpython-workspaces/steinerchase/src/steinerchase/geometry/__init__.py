"""
This module provides norms, polytopes, max-affine functions and cone-measure samplers.
"""
