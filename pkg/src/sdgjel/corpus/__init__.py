"""Bibliographic record ingestion, SDG tagging and trend counting."""
