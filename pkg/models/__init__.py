"""
Domain models: matrices, symmetry groups, reduced sets, channels and results.

Descriptors are frozen dataclasses; behavior lives in the services package.
"""
