"""Test package for crosscheck."""
