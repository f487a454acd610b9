# src/backend/services/__init__.py

"""Services package initialization."""

from .coin.coin_service import CoinService, coin_complexity_report, detect_communities
from .evaluation.nmi import nmi

__all__ = [
    'CoinService',
    'coin_complexity_report',
    'detect_communities',
    'nmi'
]
