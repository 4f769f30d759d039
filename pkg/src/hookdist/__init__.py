"""Distribution of t-hook counts over self-conjugate partitions."""

__version__ = "0.1.0"
