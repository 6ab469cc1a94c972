"""Pydantic models for request and response validation."""
