"""
steinerchase: functional Steiner point chasing of convex bodies and functions
"""
