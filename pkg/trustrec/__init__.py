"""Trust-based collaborative filtering with truncated Katz similarity."""

__version__ = "0.1.0"
