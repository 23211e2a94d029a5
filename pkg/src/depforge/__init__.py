"""depforge: transition-based dependency parsing with pluggable classifiers."""

__version__ = "0.1.0"
