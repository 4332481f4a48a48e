"""The monodromy automorphisms f_k of F = <a, b> and certificates about them.

``f_k(a) = a^k b a^-k`` and ``f_k(b) = a^(k-1) b a^-k``. Writing ``f`` for the
automorphism ``a -> b, b -> a^-1 b`` we have ``f_k = I(a^k) o f``, the sixth
power of ``f_k`` is the inner automorphism of

    x_k = a^k b^k (a^-1 b)^(k-1) a^-k b^-k (a b^-1)^(k-1),

and ``x_k`` maps to ``[a,b]^(3k^2 - 3k + 1)`` in ``[F,F]/[[F,F],F]``.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .endo import (
    Endo,
    IntMatrix,
    InnerCertificate,
    abelianization,
    check_inner_certificate,
    compose,
    endo_power,
    infinite_order_certificate,
    inner,
    inner_witness_rank2,
    matrix_order,
    apply,
)
from .nil2 import area, area_via_magnus, exponent_vector, orbit_invariant, syllable_summary
from .report import Check, Report
from .word import Word, generator, identity, parse, product

__all__ = [
    "SuciuCertificate",
    "MONODROMY_MATRIX",
    "make_f",
    "make_f_inverse",
    "make_fk",
    "make_fk_inverse",
    "xk_closed_form",
    "xk_path_summary",
    "recursion_conjugator",
    "verify_lemma",
    "mu",
    "nonconjugacy_certificate",
    "invariant_scan",
    "order_certificate",
]

A = generator(0)
B = generator(1)

MONODROMY_MATRIX = IntMatrix(((0, -1), (1, 1)))
# f^6 = I(b^-1 a b a^-1)
F_SIXTH_CONJUGATOR = parse("b^-1 a b a^-1")

NONCONJUGACY_CHAIN = (
    "f_j conjugate to f_k in Aut(F) => f_j^6 = I(x_j) conjugate to f_k^6 = I(x_k) "
    "=> x_j, x_k in the same Aut(F)-orbit (phi I(x) phi^-1 = I(phi(x)), trivial center) "
    "=> |area(x_j)| = |area(x_k)|; distinct invariants therefore certify non-conjugacy"
)
KERNEL_IS_INNER = "ker(Aut(F_2) -> GL(2,Z)) = Inn(F_2), since Out(F_2) = GL(2,Z)"

_MU_LIMIT = 10**9


def _check_k(k: int) -> int:
    if int(k) != k or k < 1:
        raise ValueError(f"k must be a positive integer, got {k!r}")
    return int(k)


def make_f() -> Endo:
    return Endo(2, (B, ~A * B))


def make_f_inverse() -> Endo:
    return Endo(2, (A * ~B, A))


def make_fk(k: int) -> Endo:
    k = _check_k(k)
    return Endo(2, (A**k * B * A**-k, A ** (k - 1) * B * A**-k))


def make_fk_inverse(k: int) -> Endo:
    """``f^-1 o I(a^-k)``."""
    k = _check_k(k)
    return compose(make_f_inverse(), inner(A**-k))


def xk_closed_form(k: int) -> Word:
    k = _check_k(k)
    return product(A**k, B**k, (~A * B) ** (k - 1), A**-k, B**-k, (A * ~B) ** (k - 1))


def xk_path_summary(k):
    """Shoelace data of ``xk_closed_form(k)`` evaluated block by block.

    Accepts an int or an integer numpy array of k values; the word itself is
    never materialized.
    """
    k = np.asarray(k, dtype=np.int64) if not isinstance(k, int) else k
    one = k * 0 + 1
    a_inv_b = syllable_summary(0, -one) * syllable_summary(1, one)
    a_b_inv = syllable_summary(0, one) * syllable_summary(1, -one)
    return (
        syllable_summary(0, k)
        * syllable_summary(1, k)
        * a_inv_b ** (k - 1)
        * syllable_summary(0, -k)
        * syllable_summary(1, -k)
        * a_b_inv ** (k - 1)
    )


def recursion_conjugator(k: int, ell: int) -> Word:
    """``a^k f(a)^k ... f^ell(a)^k``."""
    f = make_f()
    result, current = identity(), A
    for _ in range(ell + 1):
        result = result * current**k
        current = apply(f, current)
    return result


def mu(k: int) -> int:
    k = _check_k(k)
    if k > _MU_LIMIT:
        raise OverflowError(f"k={k} exceeds the supported bound {_MU_LIMIT}")
    return 3 * k * k - 3 * k + 1


@dataclass
class SuciuCertificate:
    k: int
    fk_images: tuple[Word, Word]
    sixth_power_images: tuple[Word, Word]
    witness: Word | None
    xk_closed: Word
    mu: int | None
    checks: list[Check] = field(default_factory=list)

    @property
    def valid(self) -> bool:
        return bool(self.checks) and all(c.passed for c in self.checks)

    def to_report(self) -> Report:
        report = Report(
            "verify-lemma",
            inputs={
                "k": self.k,
                "f_k": [str(w) for w in self.fk_images],
                "f_k^6": [str(w) for w in self.sixth_power_images],
                "witness": None if self.witness is None else str(self.witness),
                "x_k": str(self.xk_closed),
                "mu": self.mu,
            },
            checks=list(self.checks),
        )
        report.hypotheses.append(KERNEL_IS_INNER)
        return report


def verify_lemma(k: int) -> SuciuCertificate:
    """Check ``f_k^6 = I(x_k)`` by brute composition, with the witness
    extracted from ``f_k^6`` and compared to the closed form."""
    k = _check_k(k)
    fk = make_fk(k)
    powers = [fk]
    for _ in range(5):
        powers.append(compose(fk, powers[-1]))
    sixth = powers[5]
    closed = xk_closed_form(k)
    checks = []

    def add(name, passed, detail=""):
        checks.append(Check(name, bool(passed), detail))

    try:
        witness = inner_witness_rank2(sixth)
        add("witness_exists", witness is not None)
    except ValueError as exc:
        witness = None
        add("witness_exists", False, str(exc))
    add("witness_equals_closed_form", witness == closed, f"x_{k} has {closed.num_syllables} syllables")
    add("sixth_power_is_inner", sixth == inner(closed))
    lower = [i + 1 for i in range(5) if abelianization(powers[i]).is_identity()]
    add("lower_powers_not_inner", not lower, "abelianization of f_k^i is nontrivial for i=1..5")
    f_sixth = endo_power(make_f(), 6)
    add("f_sixth_power_inner", f_sixth == inner(F_SIXTH_CONJUGATOR), "f^6 = I(b^-1 a b a^-1)")
    recursion = compose(inner(recursion_conjugator(k, 5)), f_sixth)
    add("recursion_formula", recursion == sixth, "f_k^6 = I(a^k f(a)^k ... f^5(a)^k) o f^6")
    add("closed_form_in_commutator_subgroup", exponent_vector(closed).is_zero())
    value = area(witness) if witness is not None and exponent_vector(witness).is_zero() else None
    add("area_equals_3k2_3k_1", value == mu(k), f"area={value}, 3k^2-3k+1={mu(k)}")
    return SuciuCertificate(k, fk.images, sixth.images, witness, closed, value, checks)


def nonconjugacy_certificate(k_max: int) -> Report:
    if k_max < 2:
        raise ValueError("need k_max >= 2 to compare invariants")
    report = Report("nonconjugacy", inputs={"k_max": k_max})
    invariants = []
    for k in range(1, k_max + 1):
        value = orbit_invariant(xk_closed_form(k))
        invariants.append(value)
        report.add(f"k={k}.orbit_invariant", value == mu(k), f"|area(x_{k})| = {value}")
    distinct = len(set(invariants)) == len(invariants)
    report.add("pairwise_distinct", distinct, f"{len(set(invariants))} distinct of {len(invariants)}")
    report.result = invariants
    report.hypotheses.append(NONCONJUGACY_CHAIN)
    return report


def invariant_scan(k_max: int, materialize_limit: int = 2000, samples: int = 16) -> Report:
    """Orbit invariants for every ``k <= k_max`` without six-fold composition.

    Every k is evaluated by the block-wise shoelace of the closed form; words
    are materialized and run through the syllable shoelace and the Magnus
    oracle for ``k <= materialize_limit`` and a log-spaced sample above it.
    """
    if k_max < 2:
        raise ValueError("need k_max >= 2 to compare invariants")
    report = Report("invariant-scan", inputs={"k_max": k_max, "materialize_limit": materialize_limit})
    ks = np.arange(1, k_max + 1, dtype=np.int64)
    summary = xk_path_summary(ks)
    formula = 3 * ks * ks - 3 * ks + 1
    report.add("closed_form_exponent_zero", not np.any(summary.dx) and not np.any(summary.dy))
    report.add("blockwise_area_matches_formula", bool(np.array_equal(summary.xdy, formula)))
    report.add("strictly_increasing", bool(np.all(np.diff(summary.xdy) > 0)))
    report.add("pairwise_distinct", len(np.unique(np.abs(summary.xdy))) == k_max)

    sample = set(range(1, min(k_max, materialize_limit) + 1))
    sample.update(int(v) for v in np.unique(np.geomspace(1, k_max, samples).astype(np.int64)))
    sample.add(k_max)
    mismatches = []
    for k in sorted(sample):
        w = xk_closed_form(k)
        direct = area(w)
        if direct != mu(k):
            mismatches.append(k)
        elif k in (1, k_max) or k > materialize_limit:
            if area_via_magnus(w) != direct:
                mismatches.append(k)
    report.add(
        "materialized_words_agree",
        not mismatches,
        f"{len(sample)} k values checked" + (f"; mismatches at {mismatches[:5]}" if mismatches else ""),
    )
    report.result = {"k_max": k_max, "mu(k_max)": int(summary.xdy[-1])}
    report.hypotheses.append(NONCONJUGACY_CHAIN)
    return report


def order_certificate(k: int) -> Report:
    k = _check_k(k)
    fk = make_fk(k)
    report = Report("order", inputs={"k": k, "f_k": fk.to_json_obj()})
    mat = abelianization(fk)
    report.add("abelianization", mat == MONODROMY_MATRIX, f"{mat.tolist()}")
    order = matrix_order(mat, 12)
    report.add("matrix_order_6", order == 6, f"order={order}")
    cert = infinite_order_certificate(fk, 12)
    if cert is None:
        report.add("inner_power_found", False, "no inner power up to 12")
        return report
    closed = xk_closed_form(k)
    report.add("inner_power_found", cert.m == 6, f"m={cert.m}")
    report.add("witness_equals_x_k", cert.witness == closed)
    report.add("witness_nontrivial", not cert.witness.is_identity())
    obj = dict(cert.to_json_obj(), k=k)
    report.add("certificate_rechecks", check_inner_certificate(InnerCertificate.from_json_obj(obj)))
    report.add(
        "order_infinite",
        report.passed,
        "f_k^(6n) = I(x_k^n) != id for n != 0, free groups being torsion-free",
    )
    report.certificates.append(obj)
    return report
