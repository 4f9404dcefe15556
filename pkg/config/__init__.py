"""Configuration: settings, constants and logging."""
