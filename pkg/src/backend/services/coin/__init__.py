"""COIN-Pipeline: Stufe 1 (Filter) und Stufe 2 (Perkolation)."""
