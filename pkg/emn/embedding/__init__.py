"""Rotation systems, face tracing and genus search."""
