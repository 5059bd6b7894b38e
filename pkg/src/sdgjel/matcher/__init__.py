"""Text normalization, keyword matching, scoring and reduction."""
