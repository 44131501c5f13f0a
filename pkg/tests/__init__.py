"""Regression benches and runners."""
