"""
This package provides the experiment harness for steinerchase: the run, check
and growth drivers, their reports, and the ``steinerchase`` command line.
"""
