"""Dependencies module for shared evaluation settings."""
