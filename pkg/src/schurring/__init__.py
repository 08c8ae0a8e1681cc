"""Schur rings over cyclic groups: construction, closures, multipliers,
duality and a schurity decision procedure with brute-force oracles."""
from .closure import coset_closure, reduce_to_quasidense, s_extension, schurian_closure, singular_classes
from .duality import dual
from .lattice import Section, section
from .multipliers import aut_A, is_cyclotomic, is_schurian_quasidense, multiplier_group
from .oracle import enumerate_exhaustive, enumerate_leung_man, oracle_is_schurian, oracle_sch
from .ring import (
    SRing,
    cyclotomic,
    elementary_coset,
    group_ring,
    gwr,
    leq,
    meet,
    rank2,
    restrict,
    tensor,
    validate,
)
from .sections import is_coset_ring, is_quasidense, s_zero

__version__ = "0.1.0"

__all__ = [
    "SRing", "Section", "section", "validate", "group_ring", "rank2", "cyclotomic", "tensor",
    "gwr", "restrict", "elementary_coset", "leq", "meet", "is_quasidense", "is_coset_ring",
    "s_zero", "aut_A", "is_cyclotomic", "multiplier_group", "is_schurian_quasidense",
    "coset_closure", "schurian_closure", "singular_classes", "s_extension",
    "reduce_to_quasidense", "dual", "oracle_sch", "oracle_is_schurian",
    "enumerate_exhaustive", "enumerate_leung_man",
]
