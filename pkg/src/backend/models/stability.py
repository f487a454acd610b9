"""
Stabilitäts-Modell-Modul.
Definiert Stabilitätswerte (exakt oder geschätzt) und klassifizierte
identische Begriffe.
"""

from enum import Enum
from fractions import Fraction
from typing import Literal, Optional

from pydantic import BaseModel, ConfigDict, Field, model_validator

from src.backend.interfaces.base import StabilityError
from src.backend.models.context import IdenticalConcept


class ConceptClass(str, Enum):
    """Klassifikation eines identischen Begriffs in Stufe 1 von COIN."""
    ISOLATED_MAX_CLIQUE = "isolated_max_clique"   # eigenständige Community
    NOISY_BRIDGE = "noisy_bridge"                 # wird abgeschnitten
    RELEVANT_CLIQUE = "relevant_clique"           # geht in die Perkolation


class StabilityValue(BaseModel):
    """
    Stabilitätsindex σ(c) eines Begriffs.

    exact:   numerator / 2^k als exakte rationale Zahl
    sampled: Schätzwert aus |S| Stichproben mit Fehlerschranke C·log|S|/|S|
    """

    model_config = ConfigDict(frozen=True)

    method: Literal["exact", "sampled"] = Field(..., description="Berechnungsweg")
    extent_size: int = Field(..., ge=0, description="k = |A|")
    numerator: Optional[int] = Field(default=None, description="|{e ⊆ A : e' = B}| (exakt)")
    estimate: Optional[float] = Field(default=None, ge=0.0, le=1.0, description="Schätzwert (sampled)")
    samples: Optional[int] = Field(default=None, ge=1, description="Stichprobenumfang |S|")
    error_bound: Optional[float] = Field(default=None, ge=0.0, description="Deklarierte Fehlerschranke")
    seed: Optional[int] = Field(default=None, description="Seed der Stichprobe")

    @model_validator(mode="after")
    def _check_kind(self) -> "StabilityValue":
        if self.method == "exact":
            if self.numerator is None or not 0 <= self.numerator <= 2 ** self.extent_size:
                raise StabilityError(
                    "Ungültiger exakter Zähler",
                    {"numerator": self.numerator, "extent_size": self.extent_size}
                )
        elif self.estimate is None or self.samples is None or self.error_bound is None:
            raise StabilityError("Geschätzter Wert ohne estimate/samples/error_bound")
        return self

    @classmethod
    def exact(cls, numerator: int, extent_size: int) -> "StabilityValue":
        return cls(method="exact", numerator=numerator, extent_size=extent_size)

    @classmethod
    def sampled(
        cls,
        estimate: float,
        extent_size: int,
        samples: int,
        error_bound: float,
        seed: Optional[int]
    ) -> "StabilityValue":
        return cls(
            method="sampled",
            estimate=estimate,
            extent_size=extent_size,
            samples=samples,
            error_bound=error_bound,
            seed=seed
        )

    @property
    def is_exact(self) -> bool:
        return self.method == "exact"

    def fraction(self) -> Fraction:
        """Exakter Wert als Bruch (nur für exact)."""
        if not self.is_exact:
            raise StabilityError("Geschätzte Stabilität hat keinen exakten Bruch")
        return Fraction(self.numerator, 2 ** self.extent_size)

    @property
    def value(self) -> float:
        return float(self.fraction()) if self.is_exact else float(self.estimate)


class ScoredConcept(BaseModel):
    """Identischer Begriff mit Stabilität und Klassifikation."""

    model_config = ConfigDict(frozen=True)

    concept: IdenticalConcept
    stability: StabilityValue
    classification: ConceptClass
