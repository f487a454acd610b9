"""Graph-Einlesen, Graph-Primitive und Export."""
