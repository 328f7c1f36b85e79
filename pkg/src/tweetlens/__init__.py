"""Tweet sentiment, emotion and geo analytics."""

__version__ = "0.1.0"
