"""Graph representation, graph6 codec and graph families."""
