"""
Shared components and utilities for the Lie-algebra QRT laboratory.
"""
