"""Maximum matching and E(m,n) decisions."""
