"""Free-group words, automorphisms, degree-2 invariants and quandles."""

from .word import Word, comm, conj, identity, inv, mul, parse, power
from .endo import Endo, IntMatrix, abelianization, apply, compose, inner, inner_witness_rank2
from .nil2 import area, area_via_magnus, exponent_vector, magnus2, orbit_invariant

__version__ = "0.1.0"

__all__ = [
    "Word", "comm", "conj", "identity", "inv", "mul", "parse", "power",
    "Endo", "IntMatrix", "abelianization", "apply", "compose", "inner", "inner_witness_rank2",
    "area", "area_via_magnus", "exponent_vector", "magnus2", "orbit_invariant",
]
