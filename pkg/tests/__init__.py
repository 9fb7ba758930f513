"""Tests for the thompoly package."""
