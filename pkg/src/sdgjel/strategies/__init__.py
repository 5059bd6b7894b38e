"""Rank-to-weight strategies for keyword lists."""
