"""Ground-Truth-Vergleich (NMI)."""
