"""Enumerative pipelines for the thompoly package."""
