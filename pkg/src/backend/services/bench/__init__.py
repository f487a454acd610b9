"""Benchmark-Läufe auf Referenzdatensätzen."""
