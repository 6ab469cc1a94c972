"""Tests package for the number-phase entropy toolkit."""
