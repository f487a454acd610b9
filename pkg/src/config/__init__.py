# src/config/__init__.py
"""Configuration module for the application."""

from .logging_config import setup_logging, get_logger
from .settings import Settings, get_settings

settings = get_settings()

__all__ = ['setup_logging', 'get_logger', 'settings', 'Settings', 'get_settings']
