"""Closed-surface arithmetic."""
