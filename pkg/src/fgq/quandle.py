"""Finite quandles, generalized Alexander quandles, and their symbolic
counterpart over the rank-2 free group.

Operation convention: ``x |> y = phi(x y^-1) y``. With ``phi = id`` this is
the trivial quandle, and with ``phi`` = inversion on an abelian group it is
the dihedral (Takasaki) quandle ``2y - x``. Some references use the mirror
convention ``y phi(y^-1 x)``.

A right translation ``R_y: x -> x |> y`` is conjugate to ``phi`` through
``x -> x y^-1``, which is why the type of ``GAlex(G, phi)`` is the order of
``phi``.
"""

from __future__ import annotations

import itertools
import json
import math
import random
from collections import Counter, deque
from dataclasses import dataclass
from functools import cached_property, lru_cache
from typing import Optional, Sequence

import numpy as np

from .endo import Endo, apply, compose, identity_endo
from .report import Report
from .word import Word, random_word

__all__ = [
    "FiniteQuandle",
    "FiniteGroup",
    "AxiomReport",
    "QuandleAxiomError",
    "NotAnAutomorphismError",
    "CarrierTooLargeError",
    "check_axioms",
    "galex_finite",
    "quandle_type",
    "is_connected",
    "isomorphic",
    "cyclic_group",
    "klein_four",
    "symmetric_group",
    "units",
    "multiplication_automorphism",
    "automorphisms",
    "are_conjugate_automorphisms",
    "permutation_order",
    "galex_symbolic_op",
    "symbolic_axiom_suite",
    "type_is_infinite_certificate",
    "cyclic_type_corroboration",
]

ISO_CARRIER_LIMIT = 10


class QuandleAxiomError(ValueError):
    pass


class NotAnAutomorphismError(ValueError):
    pass


class CarrierTooLargeError(ValueError):
    pass


def _square_table(table, n, what) -> tuple[tuple[int, ...], ...]:
    try:
        rows = tuple(tuple(int(v) for v in row) for row in table)
    except (TypeError, ValueError) as exc:
        raise ValueError(f"{what} must be an n x n integer table") from exc
    if len(rows) != n or any(len(r) != n for r in rows):
        raise ValueError(f"{what} must be {n} x {n}")
    if any(not 0 <= v < n for r in rows for v in r):
        raise ValueError(f"{what} has an entry outside 0..{n - 1}")
    return rows


def permutation_order(perm: Sequence[int]) -> int:
    return math.lcm(*cycle_type(perm)) if len(perm) else 1


def cycle_type(perm: Sequence[int]) -> tuple[int, ...]:
    seen = [False] * len(perm)
    lengths = []
    for start in range(len(perm)):
        if seen[start]:
            continue
        length, x = 0, start
        while not seen[x]:
            seen[x] = True
            x = perm[x]
            length += 1
        lengths.append(length)
    return tuple(sorted(lengths))


@dataclass(frozen=True)
class AxiomReport:
    idempotent: bool
    right_invertible: bool
    self_distributive: bool

    @property
    def ok(self) -> bool:
        return self.idempotent and self.right_invertible and self.self_distributive


@dataclass(frozen=True)
class FiniteQuandle:
    """Carrier ``{0..n-1}`` with ``table[x][y] = x |> y``.

    Construction only checks the table shape; the quandle axioms are checked
    by ``check_axioms`` and required by the derived invariants.
    """

    n: int
    table: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        if self.n < 1:
            raise ValueError("carrier must be nonempty")
        object.__setattr__(self, "table", _square_table(self.table, self.n, "quandle table"))

    @classmethod
    def from_json_obj(cls, obj: dict) -> "FiniteQuandle":
        try:
            return cls(int(obj["n"]), obj["table"])
        except (KeyError, TypeError) as exc:
            raise ValueError(f"malformed quandle object: {exc}") from exc

    def to_json_obj(self) -> dict:
        return {"n": self.n, "table": [list(r) for r in self.table]}

    @classmethod
    def trivial(cls, n: int) -> "FiniteQuandle":
        return cls(n, tuple(tuple(x for _ in range(n)) for x in range(n)))

    def op(self, x: int, y: int) -> int:
        return self.table[x][y]

    def right_translation(self, y: int) -> tuple[int, ...]:
        return tuple(self.table[x][y] for x in range(self.n))

    @cached_property
    def axioms(self) -> AxiomReport:
        t = np.array(self.table)
        n = self.n
        idem = bool(np.all(t[np.arange(n), np.arange(n)] == np.arange(n)))
        bij = all(len(set(t[:, y].tolist())) == n for y in range(n))
        # (x|>y)|>z against (x|>z)|>(y|>z), all triples at once
        lhs = t[t[:, :, None], np.arange(n)[None, None, :]]
        rhs = t[t[:, None, :], t[None, :, :]]
        return AxiomReport(idem, bij, bool(np.array_equal(lhs, rhs)))

    def _require_axioms(self):
        if not self.axioms.ok:
            raise QuandleAxiomError(f"table violates the quandle axioms: {self.axioms}")

    @cached_property
    def qtype(self) -> int:
        self._require_axioms()
        return math.lcm(*(permutation_order(self.right_translation(y)) for y in range(self.n)))

    @cached_property
    def connected(self) -> bool:
        self._require_axioms()
        seen = {0}
        queue = deque([0])
        while queue:
            x = queue.popleft()
            for y in range(self.n):
                z = self.table[x][y]
                if z not in seen:
                    seen.add(z)
                    queue.append(z)
        return len(seen) == self.n

    @cached_property
    def translation_cycle_types(self) -> tuple[tuple[int, ...], ...]:
        return tuple(cycle_type(self.right_translation(y)) for y in range(self.n))


def check_axioms(q: FiniteQuandle) -> AxiomReport:
    return q.axioms


def quandle_type(q: FiniteQuandle) -> int:
    """Least ``t >= 1`` with ``R_y^t = id`` for every ``y``."""
    return q.qtype


def is_connected(q: FiniteQuandle) -> bool:
    """Whether the right translations act transitively."""
    return q.connected


@dataclass(frozen=True)
class FiniteGroup:
    n: int
    mul: tuple[tuple[int, ...], ...]
    inv: tuple[int, ...] = ()
    id: int = -1

    def __post_init__(self):
        n = self.n
        mul = _square_table(self.mul, n, "multiplication table")
        object.__setattr__(self, "mul", mul)
        ident = self.id
        if ident < 0:
            ident = next((e for e in range(n) if all(mul[e][x] == x == mul[x][e] for x in range(n))), -1)
        if not 0 <= ident < n or any(mul[ident][x] != x or mul[x][ident] != x for x in range(n)):
            raise ValueError("no two-sided identity")
        object.__setattr__(self, "id", ident)
        t = np.array(mul)
        # (xy)z against x(yz), all triples at once
        lhs = t[t[:, :, None], np.arange(n)[None, None, :]]
        rhs = t[np.arange(n)[:, None, None], t[None, :, :]]
        if not np.array_equal(lhs, rhs):
            raise ValueError("multiplication is not associative")
        inv = tuple(self.inv) if self.inv else tuple(
            next((y for y in range(n) if mul[x][y] == ident), -1) for x in range(n)
        )
        if len(inv) != n or any(not 0 <= inv[x] < n or mul[x][inv[x]] != ident or mul[inv[x]][x] != ident for x in range(n)):
            raise ValueError("inverse table is missing or wrong")
        object.__setattr__(self, "inv", inv)

    @classmethod
    def from_json_obj(cls, obj: dict) -> "FiniteGroup":
        try:
            return cls(int(obj["n"]), obj["mul"], tuple(obj.get("inv", ())), int(obj.get("id", -1)))
        except (KeyError, TypeError) as exc:
            raise ValueError(f"malformed group object: {exc}") from exc

    def to_json_obj(self) -> dict:
        return {"n": self.n, "mul": [list(r) for r in self.mul], "inv": list(self.inv), "id": self.id}

    def is_automorphism(self, phi: Sequence[int]) -> bool:
        if sorted(phi) != list(range(self.n)):
            return False
        m = self.mul
        return all(phi[m[x][y]] == m[phi[x]][phi[y]] for x in range(self.n) for y in range(self.n))

    def generating_set(self) -> list[int]:
        gens: list[int] = []
        span = {self.id}
        for x in range(self.n):
            if x not in span:
                gens.append(x)
                span = self._closure(gens)
        return gens

    def _closure(self, gens) -> set[int]:
        span = {self.id}
        frontier = [self.id]
        while frontier:
            x = frontier.pop()
            for g in gens:
                y = self.mul[x][g]
                if y not in span:
                    span.add(y)
                    frontier.append(y)
        return span


def cyclic_group(n: int) -> FiniteGroup:
    return FiniteGroup(n, tuple(tuple((x + y) % n for y in range(n)) for x in range(n)), id=0)


def klein_four() -> FiniteGroup:
    # elements 0..3 as bit pairs, group law xor
    return FiniteGroup(4, tuple(tuple(x ^ y for y in range(4)) for x in range(4)), id=0)


def symmetric_group(m: int) -> FiniteGroup:
    perms = list(itertools.permutations(range(m)))
    index = {p: i for i, p in enumerate(perms)}
    # (p q)(i) = p(q(i))
    mul = tuple(tuple(index[tuple(p[q[i]] for i in range(m))] for q in perms) for p in perms)
    return FiniteGroup(len(perms), mul, id=index[tuple(range(m))])


def units(n: int) -> list[int]:
    if n == 1:
        return [0]
    return [u for u in range(1, n) if math.gcd(u, n) == 1]


def multiplication_automorphism(n: int, u: int) -> tuple[int, ...]:
    return tuple((u * x) % n for x in range(n))


def multiplicative_order(u: int, n: int) -> int:
    if n == 1:
        return 1
    t, v = 1, u % n
    while v != 1:
        v = (v * u) % n
        t += 1
    return t


def automorphisms(g: FiniteGroup) -> list[tuple[int, ...]]:
    """All automorphisms, by extending every assignment on a generating set."""
    gens = g.generating_set()
    found = []
    for images in itertools.product(range(g.n), repeat=len(gens)):
        phi = {g.id: g.id}
        frontier = [g.id]
        ok = True
        while frontier and ok:
            x = frontier.pop()
            for s, t in zip(gens, images):
                y, z = g.mul[x][s], g.mul[phi[x]][t]
                if y in phi:
                    if phi[y] != z:
                        ok = False
                        break
                else:
                    phi[y] = z
                    frontier.append(y)
        if not ok or len(phi) != g.n:
            continue
        perm = tuple(phi[x] for x in range(g.n))
        if g.is_automorphism(perm):
            found.append(perm)
    return found


def are_conjugate_automorphisms(g: FiniteGroup, psi: Sequence[int], phi: Sequence[int]) -> bool:
    """Whether ``alpha psi alpha^-1 = phi`` for some automorphism ``alpha``."""
    for alpha in automorphisms(g):
        if all(alpha[psi[x]] == phi[alpha[x]] for x in range(g.n)):
            return True
    return False


def galex_finite(g: FiniteGroup, phi: Sequence[int]) -> FiniteQuandle:
    phi = tuple(int(v) for v in phi)
    if len(phi) != g.n or not g.is_automorphism(phi):
        raise NotAnAutomorphismError(f"{phi} is not an automorphism of the group")
    m, inv = g.mul, g.inv
    table = tuple(tuple(m[phi[m[x][inv[y]]]][y] for y in range(g.n)) for x in range(g.n))
    return FiniteQuandle(g.n, table)


def _invariants(q: FiniteQuandle):
    return (q.n, q.qtype, q.connected, tuple(sorted(Counter(q.translation_cycle_types).items())))


def isomorphic(q1: FiniteQuandle, q2: FiniteQuandle) -> Optional[tuple[int, ...]]:
    """A bijection ``s`` with ``s(x |> y) = s(x) |> s(y)``, or ``None``.

    Backtracking search; each assignment is closed under the operation
    before branching again, and ``R_x`` may only go to an element whose
    right translation has the same cycle type.
    """
    for q in (q1, q2):
        if q.n > ISO_CARRIER_LIMIT:
            raise CarrierTooLargeError(f"isomorphism search is capped at {ISO_CARRIER_LIMIT} elements")
        q._require_axioms()
    if _invariants(q1) != _invariants(q2):
        return None
    n, t1, t2 = q1.n, q1.table, q2.table
    ct1, ct2 = q1.translation_cycle_types, q2.translation_cycle_types

    def extend(sigma: list[int], x: int, u: int) -> Optional[list[int]]:
        sigma = sigma[:]
        used = set(v for v in sigma if v >= 0)
        queue = [(x, u)]
        while queue:
            x, u = queue.pop()
            if sigma[x] >= 0:
                if sigma[x] != u:
                    return None
                continue
            if u in used or ct1[x] != ct2[u]:
                return None
            sigma[x] = u
            used.add(u)
            for y in range(n):
                if sigma[y] >= 0:
                    queue.append((t1[x][y], t2[u][sigma[y]]))
                    queue.append((t1[y][x], t2[sigma[y]][u]))
        return sigma

    def search(sigma: list[int]) -> Optional[list[int]]:
        x = next((i for i in range(n) if sigma[i] < 0), None)
        if x is None:
            return sigma
        used = set(sigma)
        for u in range(n):
            if u in used:
                continue
            nxt = extend(sigma, x, u)
            if nxt is not None:
                done = search(nxt)
                if done is not None:
                    return done
        return None

    found = search([-1] * n)
    if found is None:
        return None
    assert all(found[t1[x][y]] == t2[found[x]][found[y]] for x in range(n) for y in range(n))
    return tuple(found)


# -- symbolic GAlex(F, phi) ------------------------------------------------


def galex_symbolic_op(phi: Endo, x: Word, y: Word) -> Word:
    """``phi(x y^-1) y`` in the free group."""
    return apply(phi, x * ~y) * y


def symbolic_axiom_suite(
    phi: Endo, phi_inverse: Endo, samples: int = 1000, max_len: int = 20, seed: int = 0
) -> Report:
    """Quandle axioms of ``GAlex(F, phi)`` on random word triples.

    ``phi_inverse`` witnesses that ``phi`` is an automorphism; it is used
    to solve ``z |> y = x`` as ``z = phi^-1(x y^-1) y``.
    """
    ident = identity_endo(phi.rank)
    if compose(phi, phi_inverse) != ident or compose(phi_inverse, phi) != ident:
        raise NotAnAutomorphismError("supplied inverse does not invert the endomorphism")
    rng = random.Random(seed)
    report = Report(
        "symbolic-axioms",
        inputs={"phi": phi.to_json_obj(), "samples": samples, "max_len": max_len, "seed": seed},
    )
    failures = {"idempotent": 0, "right_invertible": 0, "self_distributive": 0}
    for _ in range(samples):
        x, y, z = (random_word(rng, rng.randint(0, max_len), phi.rank) for _ in range(3))
        if galex_symbolic_op(phi, x, x) != x:
            failures["idempotent"] += 1
        solved = apply(phi_inverse, x * ~y) * y
        injective = x == z or galex_symbolic_op(phi, x, y) != galex_symbolic_op(phi, z, y)
        if galex_symbolic_op(phi, solved, y) != x or not injective:
            failures["right_invertible"] += 1
        lhs = galex_symbolic_op(phi, galex_symbolic_op(phi, x, y), z)
        rhs = galex_symbolic_op(phi, galex_symbolic_op(phi, x, z), galex_symbolic_op(phi, y, z))
        if lhs != rhs:
            failures["self_distributive"] += 1
    for name, count in failures.items():
        report.add(name, count == 0, f"{samples - count}/{samples} triples")
    return report


# -- type of GAlex(F, f_k) -------------------------------------------------

TYPE_EQUALS_ORDER = "type(GAlex(G, phi)) = order(phi) for every group G and automorphism phi"
KNOT_QUANDLE_IS_GALEX = "Q(R_k) is isomorphic to GAlex(F, f_k) (fibered n-knot, n > 1)"
KNOT_QUANDLE_CONNECTED = "Q(R_k) is connected (knot quandles are connected)"
CONNECTED_GALEX_CRITERION = (
    "connected GAlex(G, psi), GAlex(G, phi) are isomorphic iff psi, phi are conjugate in Aut(G)"
)


@lru_cache(maxsize=None)
def cyclic_type_corroboration(n_max: int = 12) -> Report:
    """``GAlex(Z_n, u)``: axioms, type = ord(u), connected iff gcd(u-1, n) = 1."""
    report = Report("galex-cyclic", inputs={"n_max": n_max})
    bad = {"axioms": [], "type": [], "connected": []}
    count = 0
    for n in range(1, n_max + 1):
        g = cyclic_group(n)
        for u in units(n):
            q = galex_finite(g, multiplication_automorphism(n, u))
            count += 1
            if not q.axioms.ok:
                bad["axioms"].append((n, u))
                continue
            if q.qtype != multiplicative_order(u, n):
                bad["type"].append((n, u))
            if q.connected != (math.gcd(u - 1, n) == 1):
                bad["connected"].append((n, u))
    report.add("axioms", not bad["axioms"], f"{count} instances" + (f"; failing {bad['axioms']}" if bad["axioms"] else ""))
    report.add("type_equals_unit_order", not bad["type"], f"failing {bad['type']}" if bad["type"] else "")
    report.add("connected_iff_gcd", not bad["connected"], f"failing {bad['connected']}" if bad["connected"] else "")
    return report


def type_is_infinite_certificate(k: int) -> Report:
    from .suciu import order_certificate

    report = Report("type-infinite", inputs={"k": k})
    report.extend(order_certificate(k), prefix="order.")
    report.extend(cyclic_type_corroboration(12), prefix="finite_corroboration.")
    report.hypotheses.extend([KNOT_QUANDLE_IS_GALEX, TYPE_EQUALS_ORDER])
    report.add(
        "type_infinite",
        report.passed,
        "type(Q(R_k)) = type(GAlex(F, f_k)) = order(f_k) = infinity",
    )
    return report


def load_quandle(text: str) -> FiniteQuandle:
    return FiniteQuandle.from_json_obj(json.loads(text))
