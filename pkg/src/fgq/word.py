"""Reduced words in a free group of finite rank.

A word is stored in run-length form: a sequence of syllables ``(generator,
exponent)`` with adjacent generators distinct and every exponent nonzero.
This normal form is canonical, so equality of words as group elements is
equality of syllable sequences.

Internally the syllables live in two read-only int64 arrays. Products only
touch the cancellation boundary in Python; the rest is array concatenation,
which keeps long words such as ``(a^-1 b)^(k-1)`` cheap for large ``k``.
"""

from __future__ import annotations

import os
import random
import re
import string
from typing import Iterable, Sequence

import numpy as np

__all__ = [
    "Word",
    "WordSyntaxError",
    "RankMismatchError",
    "identity",
    "generator",
    "generators",
    "parse",
    "mul",
    "product",
    "inv",
    "conj",
    "comm",
    "power",
    "generator_name",
    "random_word",
]

# Re-verify the normal form after every operation (slow; enabled in tests).
DEBUG = os.environ.get("FGQ_DEBUG", "") not in ("", "0")

_EMPTY = np.zeros(0, dtype=np.int64)
_EMPTY.flags.writeable = False


class WordSyntaxError(ValueError):
    """Raised when text does not conform to the word grammar."""

    def __init__(self, message: str, text: str, pos: int):
        self.message = message
        self.text = text
        self.pos = pos
        super().__init__(f"{message} at position {pos}: {text!r}")


class RankMismatchError(ValueError):
    pass


def generator_name(index: int, rank: int) -> str:
    if rank <= 26:
        return string.ascii_lowercase[index]
    return f"x{index}"


def _checked(exp: int) -> int:
    if not -(2**63) < exp < 2**63:
        raise OverflowError(f"exponent {exp} does not fit in 64 bits")
    return exp


def _reduce_lists(gens: list[int], exps: list[int]) -> tuple[list[int], list[int]]:
    # single stack pass; merges cascade through full cancellations
    out_g: list[int] = []
    out_e: list[int] = []
    for gen, exp in zip(gens, exps):
        if exp == 0:
            continue
        if out_g and out_g[-1] == gen:
            total = out_e[-1] + exp
            if total:
                out_e[-1] = _checked(total)
            else:
                out_g.pop()
                out_e.pop()
        else:
            out_g.append(gen)
            out_e.append(exp)
    return out_g, out_e


def _frozen(arr: np.ndarray) -> np.ndarray:
    arr.flags.writeable = False
    return arr


class Word:
    """An element of the free group on ``rank`` generators, in normal form.

    ``Word(rank, syllables)`` accepts any iterable of ``(generator, exponent)``
    pairs and freely reduces it. Words are immutable and hashable.
    """

    __slots__ = ("rank", "_gens", "_exps", "_hash")

    def __init__(self, rank: int, syllables: Iterable[tuple[int, int]] = ()):
        if rank < 1:
            raise ValueError(f"rank must be positive, got {rank}")
        gens, exps = [], []
        for gen, exp in syllables:
            gen, exp = int(gen), int(exp)
            if not 0 <= gen < rank:
                raise ValueError(f"generator index {gen} out of range for rank {rank}")
            gens.append(gen)
            exps.append(_checked(exp))
        gens, exps = _reduce_lists(gens, exps)
        self.rank = rank
        if gens:
            self._gens = _frozen(np.array(gens, dtype=np.int64))
            self._exps = _frozen(np.array(exps, dtype=np.int64))
        else:
            self._gens = self._exps = _EMPTY
        self._hash = None

    @classmethod
    def _from_arrays(cls, rank: int, gens: np.ndarray, exps: np.ndarray) -> "Word":
        # Trusted constructor: the arrays must already be in normal form.
        w = object.__new__(cls)
        w.rank = rank
        if len(gens) == 0:
            w._gens = w._exps = _EMPTY
        else:
            w._gens = _frozen(gens)
            w._exps = _frozen(exps)
        w._hash = None
        if DEBUG:
            if len(gens) > 1 and bool(np.any(gens[1:] == gens[:-1])):
                raise AssertionError("adjacent syllables share a generator")
            if bool(np.any(exps == 0)):
                raise AssertionError("zero exponent in reduced word")
        return w

    # -- accessors ---------------------------------------------------------

    @property
    def syllables(self) -> tuple[tuple[int, int], ...]:
        return tuple(zip(self._gens.tolist(), self._exps.tolist()))

    @property
    def gens_array(self) -> np.ndarray:
        return self._gens

    @property
    def exps_array(self) -> np.ndarray:
        return self._exps

    @property
    def num_syllables(self) -> int:
        return len(self._gens)

    def __len__(self) -> int:
        """Letter length of the reduced word."""
        return int(np.abs(self._exps).sum())

    def is_identity(self) -> bool:
        return len(self._gens) == 0

    def __bool__(self) -> bool:
        return not self.is_identity()

    # -- group law ---------------------------------------------------------

    def _check_rank(self, other: "Word") -> None:
        if not isinstance(other, Word):
            raise TypeError(f"expected Word, got {type(other).__name__}")
        if other.rank != self.rank:
            raise RankMismatchError(f"rank {self.rank} vs rank {other.rank}")

    def __mul__(self, other: "Word") -> "Word":
        self._check_rank(other)
        gu, eu, gv, ev = self._gens, self._exps, other._gens, other._exps
        m, n = len(gu), len(gv)
        if m == 0:
            return other
        if n == 0:
            return self
        if gu.item(-1) != gv.item(0):
            return Word._from_arrays(
                self.rank, np.concatenate((gu, gv)), np.concatenate((eu, ev))
            )
        # Both factors are reduced, so cancellation is confined to the seam.
        i = 0
        top = min(m, n)
        while i < top and gu.item(m - 1 - i) == gv.item(i) and eu.item(m - 1 - i) == -ev.item(i):
            i += 1
        if i < top and gu.item(m - 1 - i) == gv.item(i):
            merged = np.array([_checked(eu.item(m - 1 - i) + ev.item(i))], dtype=np.int64)
            gens = np.concatenate((gu[: m - 1 - i], gv[i : i + 1], gv[i + 1 :]))
            exps = np.concatenate((eu[: m - 1 - i], merged, ev[i + 1 :]))
        else:
            gens = np.concatenate((gu[: m - i], gv[i:]))
            exps = np.concatenate((eu[: m - i], ev[i:]))
        return Word._from_arrays(self.rank, gens, exps)

    def __invert__(self) -> "Word":
        return Word._from_arrays(self.rank, self._gens[::-1].copy(), -self._exps[::-1])

    def __pow__(self, n: int) -> "Word":
        n = int(n)
        if n == 0 or self.is_identity():
            return identity(self.rank)
        if n < 0:
            return (~self) ** (-n)
        if n == 1:
            return self
        prefix, core = self.cyclic_decomposition()
        g, e = core._gens, core._exps
        if len(g) == 1:
            core_n = Word._from_arrays(self.rank, g.copy(), np.array([_checked(e.item(0) * n)]))
        elif g[0] != g[-1]:
            core_n = Word._from_arrays(self.rank, np.tile(g, n), np.tile(e, n))
        else:
            # first and last syllables share a generator with the same sign
            # (the core is cyclically reduced), so they merge at each seam.
            inner_g, inner_e = g[1:-1], e[1:-1]
            seam = np.array([_checked(e.item(-1) + e.item(0))], dtype=np.int64)
            gens = np.concatenate(
                (g[:1], np.tile(np.concatenate((inner_g, g[:1])), n - 1), inner_g, g[-1:])
            )
            exps = np.concatenate(
                (e[:1], np.tile(np.concatenate((inner_e, seam)), n - 1), inner_e, e[-1:])
            )
            core_n = Word._from_arrays(self.rank, gens, exps)
        if prefix.is_identity():
            return core_n
        return prefix * core_n * ~prefix

    def cyclic_decomposition(self) -> tuple["Word", "Word"]:
        """Return ``(p, c)`` with ``self == p c p^-1`` and ``c`` cyclically reduced."""
        g, e = self._gens.tolist(), self._exps.tolist()
        lo, hi = 0, len(g) - 1
        left: list[tuple[int, int]] = []
        while lo < hi and g[lo] == g[hi] and (e[lo] > 0) != (e[hi] > 0):
            if e[lo] == -e[hi]:
                left.append((g[lo], e[lo]))
                lo += 1
                hi -= 1
                continue
            # partial peel: strip the common number of letters from both ends
            step = min(abs(e[lo]), abs(e[hi]))
            sign = 1 if e[lo] > 0 else -1
            left.append((g[lo], sign * step))
            e[lo] -= sign * step
            e[hi] += sign * step
            if e[lo] == 0:
                lo += 1
            if e[hi] == 0:
                hi -= 1
            break
        prefix = Word(self.rank, left)
        core = Word(self.rank, zip(g[lo : hi + 1], e[lo : hi + 1]))
        return prefix, core

    # -- value semantics ---------------------------------------------------

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Word):
            return NotImplemented
        return (
            self.rank == other.rank
            and len(self._gens) == len(other._gens)
            and bool(np.array_equal(self._gens, other._gens))
            and bool(np.array_equal(self._exps, other._exps))
        )

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash((self.rank, self._gens.tobytes(), self._exps.tobytes()))
        return self._hash

    def __str__(self) -> str:
        if self.is_identity():
            return "1"
        parts = []
        for gen, exp in zip(self._gens.tolist(), self._exps.tolist()):
            name = generator_name(gen, self.rank)
            parts.append(name if exp == 1 else f"{name}^{exp}")
        return " ".join(parts)

    def __repr__(self) -> str:
        return f"Word({self.rank}, {str(self)!r})"

    def __reduce__(self):
        return (Word, (self.rank, self.syllables))


def identity(rank: int = 2) -> Word:
    return Word(rank)


def generator(index: int, rank: int = 2) -> Word:
    return Word(rank, [(index, 1)])


def generators(rank: int = 2) -> list[Word]:
    return [generator(i, rank) for i in range(rank)]


_INT = re.compile(r"[+-]?\s*\d+")
_XNAME = re.compile(r"x(\d+)")


def parse(text: str, rank: int = 2) -> Word:
    """Parse the word grammar: ``term*`` with ``term := gen ("^" int)?``.

    Whitespace is ignored. A lone ``1`` denotes the identity, so that the
    printed form of every word parses back to itself.
    """
    if rank < 1:
        raise ValueError(f"rank must be positive, got {rank}")
    if text.strip() == "1":
        return identity(rank)
    syllables = []
    pos, n = 0, len(text)
    while pos < n:
        ch = text[pos]
        if ch.isspace():
            pos += 1
            continue
        start = pos
        if rank <= 26:
            if not ("a" <= ch <= "z"):
                raise WordSyntaxError(f"unexpected character {ch!r}", text, pos)
            gen = ord(ch) - ord("a")
            pos += 1
        else:
            m = _XNAME.match(text, pos)
            if not m:
                raise WordSyntaxError("expected generator name x<index>", text, pos)
            gen = int(m.group(1))
            pos = m.end()
        if gen >= rank:
            raise WordSyntaxError(
                f"generator {text[start:pos]!r} out of range for rank {rank}", text, start
            )
        while pos < n and text[pos].isspace():
            pos += 1
        exp = 1
        if pos < n and text[pos] == "^":
            pos += 1
            while pos < n and text[pos].isspace():
                pos += 1
            m = _INT.match(text, pos)
            if not m:
                raise WordSyntaxError("expected integer exponent", text, pos)
            exp = int(m.group(0).replace(" ", ""))
            if exp == 0:
                raise WordSyntaxError("exponent must be nonzero", text, pos)
            pos = m.end()
        syllables.append((gen, exp))
    return Word(rank, syllables)


def mul(u: Word, v: Word) -> Word:
    return u * v


def reduce_concatenation(rank: int, words: Sequence[Word]) -> Word:
    """Reduced product of many short words in one stack pass."""
    if not words:
        return identity(rank)
    gens = np.concatenate([w.gens_array for w in words]).tolist()
    exps = np.concatenate([w.exps_array for w in words]).tolist()
    gens, exps = _reduce_lists(gens, exps)
    return Word._from_arrays(rank, np.array(gens, dtype=np.int64), np.array(exps, dtype=np.int64))


def product(*words: Word) -> Word:
    """Reduced product of several words with a single final concatenation
    when no seam cancels or merges."""
    if not words:
        raise ValueError("product of no words needs an explicit rank; use identity()")
    rank = words[0].rank
    result = identity(rank)
    gens, exps = [], []
    last_gen = None
    for w in words:
        if w.rank != rank:
            raise RankMismatchError(f"rank {rank} vs rank {w.rank}")
        if w.is_identity():
            continue
        if last_gen is not None and w.gens_array.item(0) == last_gen:
            # seam interacts: flush the pending run and fall back to pairwise
            result = result * Word._from_arrays(rank, np.concatenate(gens), np.concatenate(exps))
            result = result * w
            gens, exps, last_gen = [], [], None
            continue
        if not gens and not result.is_identity() and result.gens_array.item(-1) == w.gens_array.item(0):
            result = result * w
            continue
        gens.append(w.gens_array)
        exps.append(w.exps_array)
        last_gen = w.gens_array.item(-1)
    if gens:
        result = result * Word._from_arrays(rank, np.concatenate(gens), np.concatenate(exps))
    return result


def inv(w: Word) -> Word:
    return ~w


def power(w: Word, n: int) -> Word:
    return w**n


def conj(x: Word, g: Word) -> Word:
    """``x g x^-1``, the image of ``g`` under the inner automorphism of ``x``."""
    return x * g * ~x


def comm(u: Word, v: Word) -> Word:
    """``u v u^-1 v^-1``."""
    return u * v * ~u * ~v


def random_word(rng: random.Random, length: int, rank: int = 2) -> Word:
    """Uniform random reduced word with exactly ``length`` letters."""
    letters: list[tuple[int, int]] = []
    for _ in range(length):
        while True:
            gen, sign = rng.randrange(rank), rng.choice((1, -1))
            if not letters or letters[-1] != (gen, -sign):
                break
        letters.append((gen, sign))
    return Word(rank, letters)


def from_letters(letters: Sequence[tuple[int, int]], rank: int = 2) -> Word:
    return Word(rank, letters)
