"""
Bitset-Hilfsfunktionen.
Knotenmengen werden als Python-Integer kodiert: Bit i gesetzt <=> Knoten i enthalten.
"""

from typing import Iterable, Iterator, List, Tuple


def mask_of(indices: Iterable[int]) -> int:
    """Kodiert eine Indexmenge als Bitset."""
    mask = 0
    for i in indices:
        mask |= 1 << i
    return mask


def iter_bits(mask: int) -> Iterator[int]:
    """Liefert die gesetzten Bit-Indizes aufsteigend."""
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def members(mask: int) -> List[int]:
    """Sortierte Indexliste eines Bitsets."""
    return list(iter_bits(mask))


def full_mask(n: int) -> int:
    """Bitset mit den Indizes 0..n-1."""
    return (1 << n) - 1


def canonical_key(mask: int) -> Tuple[int, List[int]]:
    """Sortierschlüssel: Größe absteigend, dann lexikographisch nach Indizes."""
    return (-mask.bit_count(), members(mask))


def canonical_sort(masks: Iterable[int]) -> List[int]:
    """Sortiert Bitsets in kanonischer Reihenfolge."""
    return sorted(masks, key=canonical_key)

