"""Formal concept analysis: contexts, Galois derivations, concept lattices."""

from latloc.fca._kernel import BACKEND
from latloc.fca.context import Context
from latloc.fca.lattice import (
    DEFAULT_MAX_CONCEPTS,
    ConceptLattice,
    FormalConcept,
    build_lattice,
    concept_of,
    extent,
    intent,
)

__all__ = [
    "BACKEND",
    "Context",
    "ConceptLattice",
    "FormalConcept",
    "DEFAULT_MAX_CONCEPTS",
    "build_lattice",
    "concept_of",
    "extent",
    "intent",
]
