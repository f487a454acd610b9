"""
Basis-Modul für Service-Interfaces und Fehlerklassen.
Definiert die grundlegende Abstraktion der Pipeline-Services.
"""

from abc import ABC, abstractmethod
from typing import Any, Optional, Dict

from src.config.logging_config import get_logger

# Logger für dieses Modul initialisieren
logger = get_logger(__name__)


class CoinError(Exception):
    """
    Basis-Exception für alle Fehler des Pakets.

    Attributes:
        message: Fehlermeldung
        details: Zusätzliche Fehlerdetails als Dictionary
    """

    def __init__(self, message: str, details: Optional[Dict[str, Any]] = None):
        """
        Initialisiert die CoinError Exception.

        Args:
            message: Beschreibende Fehlermeldung
            details: Optionale zusätzliche Fehlerdetails
        """
        self.message = message
        self.details = details or {}
        super().__init__(message)

        # Fehler loggen (DEBUG: der Aufrufer entscheidet über die Eskalation)
        logger.debug(
            self.message,
            extra={
                "error_type": self.__class__.__name__,
                "error_details": self.details
            }
        )


class GraphError(CoinError):
    """Fehler rund um Graphen und deren Einlesen."""
    pass


class ContextError(CoinError):
    """Fehler rund um formale Kontexte und Begriffsaufzählung."""
    pass


class StabilityError(CoinError):
    """Fehler bei der Berechnung des Stabilitätsindex."""
    pass


class PipelineError(CoinError):
    """Fehler innerhalb der COIN-Pipeline."""
    pass


class EvaluationError(CoinError):
    """Fehler bei der Auswertung gegen Ground Truth."""
    pass


class BaseService(ABC):
    """
    Basisklasse für alle Services.

    Definiert die grundlegende Schnittstelle für Service-Initialisierung
    und Ressourcenbereinigung. Die Services sind rechenintensiv und
    daher synchron.
    """

    def __init__(self):
        """Initialisiert den Service mit einem spezifischen Logger."""
        self.logger = get_logger(f"{__name__}.{self.__class__.__name__}")

    @abstractmethod
    def initialize(self) -> None:
        """
        Initialisiert Service-Ressourcen.

        Raises:
            CoinError: Bei Initialisierungsfehlern
        """
        pass

    def cleanup(self) -> None:
        """Bereinigt Service-Ressourcen (Standard: nichts zu tun)."""
        pass

    def __enter__(self):
        self.initialize()
        return self

    def __exit__(self, exc_type, exc, tb):
        self.cleanup()
        return False
