"""Standalone regression benches."""
