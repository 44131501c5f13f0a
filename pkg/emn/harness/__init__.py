"""Graph enumeration and verification suites."""
