import json

import pytest

from fgq.endo import (
    Endo,
    InnerCertificate,
    IntMatrix,
    WitnessExtractionError,
    abelianization,
    apply,
    check_inner_certificate,
    compose,
    endo_power,
    generator_swap,
    identity_endo,
    infinite_order_certificate,
    inner,
    inner_witness_rank2,
    matrix_order,
)
from fgq.suciu import make_f, make_f_inverse, make_fk, recursion_conjugator, xk_closed_form
from fgq.word import RankMismatchError, generator, identity, parse, random_word

a, b = generator(0), generator(1)
M = IntMatrix(((0, -1), (1, 1)))


def random_automorphism(rng, steps=4):
    """Product of random elementary Nielsen moves."""
    moves = [
        Endo(2, (a * b, b)),
        Endo(2, (~b * a, b)),
        Endo(2, (a, b * a)),
        Endo(2, (a, ~a * b)),
        Endo(2, (~a, b)),
        generator_swap(),
        make_f(),
    ]
    e = identity_endo()
    for _ in range(steps):
        e = compose(rng.choice(moves), e)
    return e


def test_apply_examples():
    f1 = make_fk(1)
    assert apply(f1, a) == parse("a b a^-1")
    assert apply(f1, b) == parse("b a^-1")
    w = parse("a^3 b^-2 a b")
    assert apply(identity_endo(), w) == w


def test_apply_homomorphism(rng):
    for _ in range(300):
        e = random_automorphism(rng)
        u, v = random_word(rng, rng.randint(0, 30)), random_word(rng, rng.randint(0, 30))
        assert apply(e, u * v) == apply(e, u) * apply(e, v)
        assert apply(e, ~u) == ~apply(e, u)


def test_apply_rank_mismatch():
    with pytest.raises(RankMismatchError):
        apply(identity_endo(2), generator(0, 3))


def test_compose_examples():
    f = make_f()
    for k in (1, 2, 3):
        assert compose(inner(a**k), f) == make_fk(k)
    e = make_fk(2)
    assert compose(e, identity_endo()) == e == compose(identity_endo(), e)
    assert endo_power(f, 6) == inner(parse("b^-1 a b a^-1"))


def test_compose_semantics_and_associativity(rng):
    for _ in range(100):
        f, g, h = (random_automorphism(rng, 3) for _ in range(3))
        w = random_word(rng, rng.randint(0, 15))
        assert apply(compose(f, g), w) == apply(f, apply(g, w))
        assert compose(compose(f, g), h) == compose(f, compose(g, h))
        assert (f @ g) == compose(f, g)


def test_inner_examples():
    assert inner(a).images == (a, parse("a b a^-1"))
    assert inner(identity()) == identity_endo()
    assert inner(a) != inner(b)


def test_inner_homomorphism_and_injectivity(rng):
    seen = {}
    for _ in range(300):
        x, y = random_word(rng, rng.randint(0, 12)), random_word(rng, rng.randint(0, 12))
        assert inner(x * y) == compose(inner(x), inner(y))
        seen.setdefault(inner(x), x)
        assert seen[inner(x)] == x


def test_abelianization_examples():
    for k in (1, 2, 3, 10):
        assert abelianization(make_fk(k)) == M
    assert abelianization(inner(parse("a b^3 a^-2"))).is_identity()
    assert abelianization(make_f()) == M
    assert abelianization(make_fk(5)) == abelianization(inner(a**5)) @ abelianization(make_f())


def test_abelianization_functorial(rng):
    for _ in range(200):
        f, g = random_automorphism(rng), random_automorphism(rng)
        assert abelianization(compose(f, g)) == abelianization(f) @ abelianization(g)
        assert abelianization(f).det() in (1, -1)


def test_matrix_order_examples():
    assert matrix_order(M, 12) == 6
    assert matrix_order(IntMatrix.identity(2), 5) == 1
    assert matrix_order(IntMatrix(((1, 1), (0, 1))), 100) is None
    with pytest.raises(ValueError):
        matrix_order(M, 0)


def test_matrix_order_entry_guard():
    with pytest.raises(OverflowError):
        matrix_order(IntMatrix(((2, 0), (0, 1))), 100)


def test_determinant():
    assert M.det() == 1
    assert abelianization(generator_swap()).det() == -1
    assert IntMatrix(((2, 3, 1), (4, 1, 0), (0, 5, 2))).det() == 2 * 2 - 3 * 8 + 1 * 20
    assert IntMatrix(((0, 1), (1, 0))).det() == -1


def test_inner_witness_examples():
    assert inner_witness_rank2(endo_power(make_fk(1), 6)) == parse("a b a^-1 b^-1")
    assert inner_witness_rank2(identity_endo()) == identity()
    for k in (1, 2, 7):
        assert inner_witness_rank2(make_fk(k)) is None


def test_inner_witness_recovers_random_conjugators(rng):
    for _ in range(500):
        x = random_word(rng, rng.randint(0, 40))
        assert inner_witness_rank2(inner(x)) == x


def test_inner_witness_rejects_non_automorphism():
    with pytest.raises(WitnessExtractionError):
        inner_witness_rank2(Endo(2, (a, b * a * b * ~a * ~b)))
    with pytest.raises(WitnessExtractionError):
        inner_witness_rank2(Endo(2, (parse("a b a^-1 b^-1 a"), b)))


def test_conjugation_by_automorphism(rng):
    f = make_f()
    for _ in range(200):
        x = random_word(rng, rng.randint(0, 20))
        assert compose(inner(apply(f, x)), f) == compose(f, inner(x))


@pytest.mark.parametrize("k", [1, 2, 3])
@pytest.mark.parametrize("ell", range(1, 6))
def test_recursion(k, ell):
    f = make_f()
    lhs = endo_power(make_fk(k), ell + 1)
    rhs = compose(inner(recursion_conjugator(k, ell)), endo_power(f, ell + 1))
    assert lhs == rhs


def test_f_inverse():
    assert compose(make_f(), make_f_inverse()) == identity_endo()
    assert compose(make_f_inverse(), make_f()) == identity_endo()


def test_infinite_order_certificate_examples():
    for k in range(1, 6):
        cert = infinite_order_certificate(make_fk(k), 12)
        assert (cert.m, cert.witness) == (6, xk_closed_form(k))
    cert = infinite_order_certificate(inner(a), 1)
    assert (cert.m, cert.witness) == (1, a)
    assert infinite_order_certificate(identity_endo(), 10) is None


def test_certificate_round_trip_and_checker():
    cert = infinite_order_certificate(make_fk(3), 12)
    obj = json.loads(json.dumps(cert.to_json_obj()))
    again = InnerCertificate.from_json_obj(obj)
    assert again == cert
    assert check_inner_certificate(obj)
    forged = dict(obj, witness="a b a^-1 b^-1")
    assert not check_inner_certificate(forged)
    assert not check_inner_certificate(dict(obj, m=5))
    assert not check_inner_certificate(dict(obj, witness="1"))


def test_endo_json_format():
    e = Endo.from_json_obj({"rank": 2, "images": ["a^2 b a^-2", "a b a^-2"]})
    assert e == make_fk(2)
    assert json.loads(e.to_json()) == {"rank": 2, "images": ["a^2 b a^-2", "a b a^-2"]}
    with pytest.raises(ValueError):
        Endo.from_json_obj({"rank": 2, "images": ["a"]})


def test_endo_rank_checked():
    with pytest.raises((ValueError, RankMismatchError)):
        Endo(2, (generator(0, 3), generator(1, 3)))
    with pytest.raises(RankMismatchError):
        compose(identity_endo(2), identity_endo(3))
