"""Hand-built embedded fixtures."""
