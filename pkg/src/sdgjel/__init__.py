"""SDG to JEL taxonomy crosswalk engine."""

__version__ = "0.1.0"
