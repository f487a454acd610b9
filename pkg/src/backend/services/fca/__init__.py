"""Formale Kontexte und Begriffsaufzählung."""
