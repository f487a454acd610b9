"""Kommandozeile für die COIN-Community-Erkennung."""
