"""Test package for the symcap library and CLI."""
