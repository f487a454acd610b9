"""Datenmodelle für Graphen, Kontexte, Stabilität, Communities und Evaluation."""

from .graph import Graph, NodeLabeling, CliqueSet
from .context import FormalContext, FormalConcept, ConceptSet, IdenticalConcept
from .stability import StabilityValue, ScoredConcept, ConceptClass
from .community import CoinConfig, Community, CommunitySet, Provenance, CoinRun, ComplexityReport
from .evaluation import Partition, ConfusionMatrix

__all__ = [
    'Graph', 'NodeLabeling', 'CliqueSet',
    'FormalContext', 'FormalConcept', 'ConceptSet', 'IdenticalConcept',
    'StabilityValue', 'ScoredConcept', 'ConceptClass',
    'CoinConfig', 'Community', 'CommunitySet', 'Provenance', 'CoinRun', 'ComplexityReport',
    'Partition', 'ConfusionMatrix'
]
