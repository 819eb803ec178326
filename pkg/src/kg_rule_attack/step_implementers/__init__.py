"""StepImplementer implementations.
"""
