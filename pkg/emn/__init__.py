"""Matching extendability and surface embedding package."""
