"""Stabilitätsindex und Klassifikation identischer Begriffe."""
