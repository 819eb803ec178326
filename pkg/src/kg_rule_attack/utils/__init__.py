"""Shared helpers used across kg-rule-attack.
"""
