"""Endomorphisms of a free group given by generator images."""

from __future__ import annotations

import json
from dataclasses import dataclass
from functools import lru_cache
from typing import Optional, Sequence

from .nil2 import exponent_vector
from .word import RankMismatchError, Word, generator, identity, parse, reduce_concatenation

__all__ = [
    "Endo",
    "IntMatrix",
    "InnerCertificate",
    "WitnessExtractionError",
    "apply",
    "compose",
    "endo_power",
    "identity_endo",
    "inner",
    "abelianization",
    "matrix_order",
    "inner_witness_rank2",
    "infinite_order_certificate",
    "check_inner_certificate",
    "generator_swap",
]

_ENTRY_GUARD = 2**62


class WitnessExtractionError(ValueError):
    """The abelianization is trivial but the map is not inner.

    For genuine automorphisms of the rank-2 free group this cannot happen,
    so the endomorphism was not an automorphism.
    """


@dataclass(frozen=True)
class Endo:
    rank: int
    images: tuple[Word, ...]

    def __post_init__(self):
        images = tuple(self.images)
        object.__setattr__(self, "images", images)
        if len(images) != self.rank:
            raise ValueError(f"need {self.rank} images, got {len(images)}")
        for img in images:
            if img.rank != self.rank:
                raise RankMismatchError(f"image {img} has rank {img.rank}, expected {self.rank}")

    @classmethod
    def from_strings(cls, images: Sequence[str], rank: Optional[int] = None) -> "Endo":
        rank = len(images) if rank is None else rank
        return cls(rank, tuple(parse(s, rank) for s in images))

    def __call__(self, w: Word) -> Word:
        return apply(self, w)

    def __matmul__(self, other: "Endo") -> "Endo":
        return compose(self, other)

    def __pow__(self, n: int) -> "Endo":
        return endo_power(self, n)

    def is_identity(self) -> bool:
        return self == identity_endo(self.rank)

    def to_json_obj(self) -> dict:
        return {"rank": self.rank, "images": [str(w) for w in self.images]}

    @classmethod
    def from_json_obj(cls, obj: dict) -> "Endo":
        try:
            rank, images = int(obj["rank"]), obj["images"]
        except (KeyError, TypeError) as exc:
            raise ValueError(f"malformed endomorphism object: {obj!r}") from exc
        return cls.from_strings(images, rank)

    def to_json(self) -> str:
        return json.dumps(self.to_json_obj())

    def __str__(self) -> str:
        return "{" + ", ".join(f"{generator(i, self.rank)} -> {w}" for i, w in enumerate(self.images)) + "}"


def identity_endo(rank: int = 2) -> Endo:
    return Endo(rank, tuple(generator(i, rank) for i in range(rank)))


def apply(e: Endo, w: Word) -> Word:
    if w.rank != e.rank:
        raise RankMismatchError(f"endomorphism of rank {e.rank} applied to word of rank {w.rank}")
    powers: dict[tuple[int, int], Word] = {}
    pieces = []
    for syl in w.syllables:
        piece = powers.get(syl)
        if piece is None:
            piece = powers[syl] = e.images[syl[0]] ** syl[1]
        pieces.append(piece)
    if len(pieces) > 4:
        return reduce_concatenation(e.rank, pieces)
    result = identity(e.rank)
    for piece in pieces:
        result = result * piece
    return result


def compose(f: Endo, g: Endo) -> Endo:
    """``f o g``, i.e. ``w -> f(g(w))``."""
    if f.rank != g.rank:
        raise RankMismatchError(f"rank {f.rank} vs rank {g.rank}")
    return Endo(f.rank, tuple(apply(f, img) for img in g.images))


def endo_power(e: Endo, n: int) -> Endo:
    if n < 0:
        raise ValueError("negative powers need an inverse; compose with it explicitly")
    result = identity_endo(e.rank)
    for _ in range(n):
        result = compose(e, result)
    return result


def inner(x: Word) -> Endo:
    """The inner automorphism ``w -> x w x^-1``."""
    xi = ~x
    return Endo(x.rank, tuple(x * generator(i, x.rank) * xi for i in range(x.rank)))


@lru_cache(maxsize=None)
def _identity_rows(n: int) -> tuple[tuple[int, ...], ...]:
    return tuple(tuple(int(i == j) for j in range(n)) for i in range(n))


@dataclass(frozen=True)
class IntMatrix:
    """Square integer matrix; column ``j`` is the image of basis vector ``j``."""

    rows: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        rows = tuple(tuple(int(v) for v in r) for r in self.rows)
        if any(len(r) != len(rows) for r in rows):
            raise ValueError("matrix must be square")
        object.__setattr__(self, "rows", rows)

    @classmethod
    def _trusted(cls, rows: tuple[tuple[int, ...], ...]) -> "IntMatrix":
        m = object.__new__(cls)
        object.__setattr__(m, "rows", rows)
        return m

    @property
    def n(self) -> int:
        return len(self.rows)

    @classmethod
    def identity(cls, n: int) -> "IntMatrix":
        return cls._trusted(_identity_rows(n))

    @classmethod
    def from_columns(cls, columns: Sequence[Sequence[int]]) -> "IntMatrix":
        n = len(columns)
        return cls(tuple(tuple(columns[j][i] for j in range(n)) for i in range(n)))

    def __matmul__(self, other: "IntMatrix") -> "IntMatrix":
        if self.n != other.n:
            raise ValueError("dimension mismatch")
        cols = list(zip(*other.rows))
        return IntMatrix._trusted(
            tuple(tuple([sum([a * b for a, b in zip(r, c)]) for c in cols]) for r in self.rows)
        )

    def is_identity(self) -> bool:
        n = len(self.rows)
        return self.rows == _identity_rows(n)

    def max_abs(self) -> int:
        return max([max(map(abs, r)) for r in self.rows], default=0)

    def det(self) -> int:
        # Bareiss fraction-free elimination
        m = [list(r) for r in self.rows]
        n, sign, prev = self.n, 1, 1
        for k in range(n - 1):
            if m[k][k] == 0:
                swap = next((i for i in range(k + 1, n) if m[i][k] != 0), None)
                if swap is None:
                    return 0
                m[k], m[swap] = m[swap], m[k]
                sign = -sign
            for i in range(k + 1, n):
                for j in range(k + 1, n):
                    m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]) // prev
            prev = m[k][k]
        return sign * m[n - 1][n - 1] if n else 1

    def tolist(self) -> list[list[int]]:
        return [list(r) for r in self.rows]


def abelianization(e: Endo) -> IntMatrix:
    cols = [exponent_vector(img) for img in e.images]
    return IntMatrix._trusted(tuple(tuple(c[i] for c in cols) for i in range(e.rank)))


def matrix_order(m: IntMatrix, bound: int) -> Optional[int]:
    """Least ``n <= bound`` with ``m^n = 1``, or ``None``."""
    if bound < 1:
        raise ValueError("bound must be at least 1")
    current = m
    for n in range(1, bound + 1):
        if current.is_identity():
            return n
        if current.max_abs() > _ENTRY_GUARD:
            raise OverflowError(f"matrix entries exceed 2^62 at power {n}")
        current = current @ m
    return None


def inner_witness_rank2(e: Endo) -> Optional[Word]:
    """The unique ``x`` with ``e == inner(x)``, or ``None`` if ``e`` acts
    nontrivially on the abelianization.

    Works from the image of ``a``: ``x a x^-1 = p a p^-1`` forces
    ``x = p a^j``, and ``j`` is read off ``p^-1 e(b) p = a^j b a^-j``.
    """
    if e.rank != 2:
        raise ValueError("inner witness extraction is implemented for rank 2 only")
    if not abelianization(e).is_identity():
        return None
    a = generator(0)
    image_a, image_b = e.images
    prefix, core = image_a.cyclic_decomposition()
    if core != a:
        raise WitnessExtractionError(f"image of a is not a conjugate of a: {image_a}")
    middle = ~prefix * image_b * prefix
    syl = middle.syllables
    if syl == ((1, 1),):
        j = 0
    elif len(syl) == 3 and syl[0][0] == 0 and syl[1] == (1, 1) and syl[2] == (0, -syl[0][1]):
        j = syl[0][1]
    else:
        raise WitnessExtractionError(f"image of b does not match any conjugator p a^j: {image_b}")
    x = prefix * a**j
    if inner(x) != e:
        raise WitnessExtractionError(f"candidate witness {x} does not reproduce the map")
    return x


@dataclass(frozen=True)
class InnerCertificate:
    """``e^m == inner(witness)`` with ``witness != 1``.

    Then ``e^(m n) = inner(witness^n)`` is nontrivial for all ``n != 0``
    because a free group is torsion-free with trivial center, so ``e`` has
    infinite order.
    """

    endo: Endo
    m: int
    witness: Word

    def to_json_obj(self) -> dict:
        return {
            "kind": "inner_power",
            "endo": self.endo.to_json_obj(),
            "m": self.m,
            "witness": str(self.witness),
        }

    @classmethod
    def from_json_obj(cls, obj: dict) -> "InnerCertificate":
        if obj.get("kind") != "inner_power":
            raise ValueError(f"not an inner_power certificate: {obj.get('kind')!r}")
        endo = Endo.from_json_obj(obj["endo"])
        return cls(endo, int(obj["m"]), parse(obj["witness"], endo.rank))


def infinite_order_certificate(e: Endo, bound: int) -> Optional[InnerCertificate]:
    if e.rank != 2:
        raise ValueError("certificates are implemented for rank 2 only")
    if bound < 1:
        raise ValueError("bound must be at least 1")
    current = e
    for m in range(1, bound + 1):
        if m > 1:
            current = compose(e, current)
        x = inner_witness_rank2(current)
        if x is not None and not x.is_identity():
            return InnerCertificate(e, m, x)
    return None


def check_inner_certificate(cert: InnerCertificate | dict) -> bool:
    """Re-verify a certificate from its data alone."""
    if isinstance(cert, dict):
        cert = InnerCertificate.from_json_obj(cert)
    if cert.m < 1 or cert.witness.is_identity():
        return False
    return endo_power(cert.endo, cert.m) == inner(cert.witness)


def generator_swap(rank: int = 2) -> Endo:
    """Exchange the first two generators (determinant -1)."""
    gens = [generator(i, rank) for i in range(rank)]
    gens[0], gens[1] = gens[1], gens[0]
    return Endo(rank, tuple(gens))

