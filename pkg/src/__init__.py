"""COIN: Community-Erkennung über identische formale Begriffe."""

__version__ = "0.1"
