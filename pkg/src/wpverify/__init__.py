"""Exact verification of WP-Bailey pair and Lambert series identities."""

__version__ = "0.1.0"
