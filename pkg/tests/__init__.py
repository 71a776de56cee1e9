"""Tests for exponent-toolkit."""
