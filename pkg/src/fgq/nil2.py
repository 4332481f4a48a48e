"""Degree-2 nilpotent invariants of words in the rank-2 free group.

For ``w`` in the commutator subgroup, the image of ``w`` in
``[F,F]/[[F,F],F]``, which is infinite cyclic and generated by the class of
``[a,b]``, is the signed area enclosed by the closed lattice path ``w``
traces in Z^2 (``a`` steps in +x, ``b`` in +y). ``area`` evaluates it with a
shoelace sum. ``area_via_magnus`` reads the same number off the truncated
Magnus expansion instead and shares no code with ``area``.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import NamedTuple

import numpy as np

from .word import Word

__all__ = [
    "ExponentVector",
    "NotInCommutatorSubgroupError",
    "PathSummary",
    "Series2",
    "exponent_vector",
    "area",
    "path_summary",
    "syllable_summary",
    "magnus2",
    "area_via_magnus",
    "orbit_invariant",
]

_INT64_SAFE = 2**62


class NotInCommutatorSubgroupError(ValueError):
    def __init__(self, vector: "ExponentVector"):
        self.vector = vector
        super().__init__(f"exponent vector {tuple(vector)} is not zero")


class ExponentVector(tuple):
    """Total exponent of each generator; additive under multiplication."""

    def __new__(cls, values):
        return super().__new__(cls, (int(v) for v in values))

    def __add__(self, other):
        return ExponentVector(x + y for x, y in zip(self, other))

    def is_zero(self) -> bool:
        return not any(self)


def exponent_vector(w: Word) -> ExponentVector:
    g, e = w.gens_array, w.exps_array
    if len(g) == 0:
        return ExponentVector([0] * w.rank)
    if w.rank == 2:
        # reduced rank-2 words alternate between a and b syllables
        if len(e) < 64:
            ls = e.tolist()
            first, second = sum(ls[0::2]), sum(ls[1::2])
        else:
            first, second = int(e[0::2].sum()), int(e[1::2].sum())
        return ExponentVector((first, second) if g.item(0) == 0 else (second, first))
    if int(np.abs(e).sum()) < 2**52:
        # float64 weights are exact below 2^53
        counts = np.bincount(g, weights=e, minlength=w.rank)
        return ExponentVector(int(c) for c in counts)
    totals = [0] * w.rank
    for gen, exp in zip(g.tolist(), e.tolist()):
        totals[gen] += exp
    return ExponentVector(totals)


def _require_rank2_commutator(w: Word) -> None:
    if w.rank != 2:
        raise ValueError(f"area is defined for rank 2 only, got rank {w.rank}")
    vec = exponent_vector(w)
    if not vec.is_zero():
        raise NotInCommutatorSubgroupError(vec)


class PathSummary(NamedTuple):
    """Displacement and accumulated ``sum x dy`` of a lattice path.

    Paths compose as a monoid: the second path starts where the first ended,
    so its ``x dy`` terms pick up an extra ``dx_first * dy_second``. Fields may
    be ints or integer numpy arrays (evaluating many paths at once).
    """

    dx: object
    dy: object
    xdy: object

    def __mul__(self, other: "PathSummary") -> "PathSummary":
        return PathSummary(
            self.dx + other.dx,
            self.dy + other.dy,
            self.xdy + other.xdy + self.dx * other.dy,
        )

    def __pow__(self, n):
        # sum_{j<n} (xdy + j*dx*dy)
        return PathSummary(
            self.dx * n,
            self.dy * n,
            self.xdy * n + self.dx * self.dy * (n * (n - 1) // 2),
        )


def syllable_summary(gen: int, exp) -> PathSummary:
    """Summary of the straight run ``a^exp`` (gen 0) or ``b^exp`` (gen 1)."""
    zero = exp * 0
    if gen == 0:
        return PathSummary(exp, zero, zero)
    if gen == 1:
        return PathSummary(zero, exp, zero)
    raise ValueError(f"generator {gen} has no lattice direction in rank 2")


def path_summary(w: Word) -> PathSummary:
    """Shoelace data of ``w``, one closed-form term per syllable run.

    ``x`` is constant along a ``b``-run, which therefore contributes
    ``x * exponent``; ``a``-runs contribute nothing to ``sum x dy``.
    """
    if w.rank != 2:
        raise ValueError(f"lattice paths need rank 2, got rank {w.rank}")
    g, e = w.gens_array, w.exps_array
    if len(g) == 0:
        return PathSummary(0, 0, 0)
    starts_with_a = g.item(0) == 0
    # syllables alternate, so the a-runs and b-runs are the two strided halves
    a_runs = e[0::2] if starts_with_a else e[1::2]
    b_runs = e[1::2] if starts_with_a else e[0::2]
    a_bound = len(a_runs) * int(np.abs(a_runs).max()) if len(a_runs) else 0
    b_bound = len(b_runs) * int(np.abs(b_runs).max()) if len(b_runs) else 0
    if a_bound * max(b_bound, 1) < _INT64_SAFE:
        if len(a_runs) == 0:
            return PathSummary(0, int(b_runs.sum()), 0)
        x_after = np.cumsum(a_runs)
        # x seen by the j-th b-run: a-runs strictly before it
        if starts_with_a:
            x_at_b = x_after[: len(b_runs)]
        else:
            x_at_b = np.concatenate(([0], x_after[: len(b_runs) - 1]))
        return PathSummary(int(x_after[-1]), int(b_runs.sum()), int(np.dot(x_at_b, b_runs)))
    x = y = xdy = 0
    for gen, exp in zip(g.tolist(), e.tolist()):
        if gen == 0:
            x += exp
        else:
            xdy += x * exp
            y += exp
    return PathSummary(x, y, xdy)


def area(w: Word) -> int:
    """Image of ``w`` in ``[F,F]/[[F,F],F]`` in units of the class of ``[a,b]``."""
    if w.rank != 2:
        raise ValueError(f"area is defined for rank 2 only, got rank {w.rank}")
    summary = path_summary(w)
    if summary.dx or summary.dy:
        raise NotInCommutatorSubgroupError(ExponentVector((summary.dx, summary.dy)))
    return summary.xdy


@dataclass(frozen=True)
class Series2:
    """Element of ``Z<<X,Y>>`` truncated above degree 2.

    ``c2`` holds the coefficients of ``XX, XY, YX, YY`` in that order.
    """

    c0: int = 1
    c1: tuple[int, int] = (0, 0)
    c2: tuple[int, int, int, int] = (0, 0, 0, 0)

    def __mul__(self, other: "Series2") -> "Series2":
        p0, (px, py), q0, (qx, qy) = self.c0, self.c1, other.c0, other.c1
        c1 = (p0 * qx + px * q0, p0 * qy + py * q0)
        cross = (px * qx, px * qy, py * qx, py * qy)
        c2 = tuple(p0 * q + p * q0 + c for p, q, c in zip(self.c2, other.c2, cross))
        return Series2(p0 * q0, c1, c2)

    @property
    def xy(self) -> int:
        return self.c2[1]


def _magnus_run(gen: int, exp: int) -> Series2:
    # (1 + X)^e = 1 + e X + C(e, 2) X^2, valid for negative e as well
    quad = exp * (exp - 1) // 2
    if gen == 0:
        return Series2(1, (exp, 0), (quad, 0, 0, 0))
    return Series2(1, (0, exp), (0, 0, 0, quad))


def magnus2(w: Word) -> Series2:
    if w.rank != 2:
        raise ValueError(f"magnus2 is defined for rank 2 only, got rank {w.rank}")
    result = Series2()
    for gen, exp in w.syllables:
        result = result * _magnus_run(gen, exp)
    return result


def area_via_magnus(w: Word) -> int:
    _require_rank2_commutator(w)
    return magnus2(w).xy


def orbit_invariant(w: Word) -> int:
    """``|area(w)|``; automorphisms change the area only by ``det = +-1``."""
    return abs(area(w))
