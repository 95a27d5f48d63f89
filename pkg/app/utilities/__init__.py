"""
Shared utilities: logging setup, union-find and hashing helpers.
"""

# Note: Individual modules are imported directly by consumers
