import json

import numpy as np
import pytest

from fgq.endo import (
    IntMatrix,
    abelianization,
    apply,
    compose,
    endo_power,
    identity_endo,
    infinite_order_certificate,
    inner,
)
from fgq.nil2 import area, exponent_vector
from fgq.report import Report
from fgq.suciu import (
    MONODROMY_MATRIX,
    invariant_scan,
    make_f,
    make_fk,
    make_fk_inverse,
    mu,
    nonconjugacy_certificate,
    order_certificate,
    verify_lemma,
    xk_closed_form,
    xk_path_summary,
)
from fgq.word import conj, generator, parse

a, b = generator(0), generator(1)

# The iterates f^j(a), j = 1..7, transcribed from the source display.
ITERATES = [
    "b",
    "a^-1 b",
    "b^-1 a^-1 b",
    "b^-1 a b^-1 a^-1 b",
    "b^-1 a^2 b^-1 a^-1 b",
    "b^-1 a b a b^-1 a^-1 b",
    "b^-1 a b a^-1 b a b^-1 a^-1 b",
]
# and their displayed conjugation forms (conjugator, core) for j = 4..7
CONJUGATION_FORMS = {
    4: ("b^-1 a", "b^-1"),
    5: ("b^-1 a b", "b^-1 a"),
    6: ("b^-1 a b a^-1", "a"),
    7: ("b^-1 a b a^-1", "b"),
}


def test_iterate_table():
    f = make_f()
    w = a
    for j, expected in enumerate(ITERATES, start=1):
        w = apply(f, w)
        assert str(w) == expected, f"f^{j}(a)"


@pytest.mark.parametrize("j", sorted(CONJUGATION_FORMS))
def test_iterate_conjugation_forms(j):
    p, core = CONJUGATION_FORMS[j]
    assert conj(parse(p), parse(core)) == parse(ITERATES[j - 1])


def test_make_f_examples():
    f = make_f()
    assert apply(f, a) == b
    assert apply(endo_power(f, 2), a) == parse("a^-1 b")
    assert apply(endo_power(f, 3), a) == parse("b^-1 a^-1 b")


def test_make_fk_examples():
    assert make_fk(1).images == (parse("a b a^-1"), parse("b a^-1"))
    assert make_fk(2).images == (parse("a^2 b a^-2"), parse("a b a^-2"))
    assert abelianization(make_fk(7)) == IntMatrix(((0, -1), (1, 1)))
    for k in range(1, 8):
        assert make_fk(k) == compose(inner(a**k), make_f())
    with pytest.raises(ValueError):
        make_fk(0)


@pytest.mark.parametrize("k", [1, 2, 5])
def test_fk_inverse(k):
    assert compose(make_fk(k), make_fk_inverse(k)) == identity_endo()
    assert compose(make_fk_inverse(k), make_fk(k)) == identity_endo()


def test_closed_form_examples():
    assert xk_closed_form(1) == parse("a b a^-1 b^-1")
    assert xk_closed_form(2) == parse("a^2 b^2 a^-1 b a^-2 b^-2 a b^-1")
    assert str(xk_closed_form(2)) == "a^2 b^2 a^-1 b a^-2 b^-2 a b^-1"
    for k in range(1, 101):
        assert exponent_vector(xk_closed_form(k)).is_zero()
    with pytest.raises(ValueError):
        xk_closed_form(0)


def test_closed_form_syllable_count():
    # a^k b^k (a^-1 b)^(k-1) a^-k b^-k (a b^-1)^(k-1): 4 + 4(k-1) runs, no merging
    for k in range(1, 20):
        assert xk_closed_form(k).num_syllables == 4 * k


def test_verify_lemma_examples():
    c1 = verify_lemma(1)
    assert c1.valid and c1.witness == parse("a b a^-1 b^-1")
    c2 = verify_lemma(2)
    assert c2.valid and c2.witness == xk_closed_form(2)
    c3 = verify_lemma(3)
    assert {c.name: c.passed for c in c3.checks}["recursion_formula"]


def test_verify_lemma_range():
    for k in range(1, 51):
        cert = verify_lemma(k)
        assert cert.valid, [c for c in cert.checks if not c.passed]
        assert cert.mu == 3 * k * k - 3 * k + 1
        assert cert.witness == cert.xk_closed


def test_certificate_report_round_trip():
    report = verify_lemma(4).to_report()
    again = Report.from_json(report.to_json())
    assert again.to_dict() == report.to_dict()
    assert parse(again.inputs["witness"]) == xk_closed_form(4)


def test_lemma_detects_wrong_witness():
    # a forged closed form must not pass the sixth-power check
    wrong = inner(xk_closed_form(3))
    assert endo_power(make_fk(2), 6) != wrong


def test_sign_of_determinant():
    assert MONODROMY_MATRIX.det() == 1
    for k in range(1, 6):
        w = parse("a b^2 a^-1 b^-2")
        assert area(apply(make_fk(k), w)) == area(w)


def test_mu_examples():
    assert [mu(k) for k in (1, 2, 3)] == [1, 7, 19]
    assert all(mu(k) < mu(k + 1) for k in range(1, 1000))
    assert mu(10**9) == 3 * 10**18 - 3 * 10**9 + 1
    with pytest.raises(OverflowError):
        mu(10**9 + 1)
    with pytest.raises(ValueError):
        mu(0)


def test_mu_matches_shoelace():
    for k in range(1, 2001):
        assert area(xk_closed_form(k)) == mu(k)


def test_blockwise_summary_vectorized():
    ks = np.arange(1, 10**5 + 1, dtype=np.int64)
    s = xk_path_summary(ks)
    assert not s.dx.any() and not s.dy.any()
    assert np.array_equal(s.xdy, 3 * ks * ks - 3 * ks + 1)


def test_nonconjugacy_examples():
    r = nonconjugacy_certificate(5)
    assert r.passed and r.result == [1, 7, 19, 37, 61]
    assert nonconjugacy_certificate(2).result == [1, 7]
    with pytest.raises(ValueError):
        nonconjugacy_certificate(1)
    assert any("Aut(F)-orbit" in h or "orbit" in h for h in r.hypotheses)


def test_invariant_scan():
    r = invariant_scan(5000, materialize_limit=100, samples=8)
    assert r.passed
    assert r.result["mu(k_max)"] == mu(5000)


def test_order_certificate_examples():
    r1 = order_certificate(1)
    assert r1.passed
    assert r1.certificates[0]["m"] == 6 and r1.certificates[0]["witness"] == "a b a^-1 b^-1"
    r4 = order_certificate(4)
    assert r4.passed and parse(r4.certificates[0]["witness"]) == xk_closed_form(4)
    cert = infinite_order_certificate(inner(a), 1)
    assert cert.m == 1 and cert.witness == a


def test_order_certificate_serializes():
    r = order_certificate(2)
    obj = json.loads(r.to_json())
    assert obj["verdict"] == "pass"
    assert obj["certificates"][0]["kind"] == "inner_power"
