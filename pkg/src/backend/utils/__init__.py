"""Hilfsfunktionen."""
