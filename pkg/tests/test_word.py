import random

import pytest
from hypothesis import given
from hypothesis import strategies as st

from fgq.word import (
    RankMismatchError,
    Word,
    WordSyntaxError,
    comm,
    conj,
    generator,
    identity,
    inv,
    mul,
    parse,
    power,
    product,
    random_word,
)

a, b = generator(0), generator(1)

letters = st.lists(st.tuples(st.integers(0, 1), st.sampled_from([1, -1])), max_size=30)
words = letters.map(lambda ls: Word(2, ls))


def test_parse_examples():
    assert parse("a b a^-1 b^-1", 2).syllables == ((0, 1), (1, 1), (0, -1), (1, -1))
    assert parse("", 2) == identity(2)
    assert parse("a^2 a^-2", 2).is_identity()


def test_parse_whitespace_insensitive():
    assert parse("ab^ -2a", 2) == parse("a b^-2 a", 2)
    assert parse("  a ^ 3 ", 2) == a**3
    assert parse("a^+2", 2) == a**2


@pytest.mark.parametrize(
    "text, pos",
    [("a^", 2), ("a^0", 2), ("a b c", 4), ("a % b", 2), ("a^x", 2)],
)
def test_parse_errors_report_position(text, pos):
    with pytest.raises(WordSyntaxError) as info:
        parse(text, 2)
    assert info.value.pos == pos


def test_parse_generator_out_of_range():
    with pytest.raises(WordSyntaxError, match="out of range"):
        parse("c", 2)
    assert parse("c", 3) == generator(2, 3)


def test_print_parse_round_trip_and_identity():
    assert str(identity()) == "1"
    assert parse("1", 2).is_identity()
    w = parse("a^2 b a^-2", 2)
    assert str(w) == "a^2 b a^-2"
    assert parse(str(w), 2) == w


def test_high_rank_names():
    w = Word(30, [(0, 1), (29, -2)])
    assert str(w) == "x0 x29^-2"
    assert parse(str(w), 30) == w


def test_mul_examples():
    assert mul(parse("a b"), parse("b^-1 a")) == parse("a^2")
    w = parse("a^3 b^-1 a")
    assert mul(w, identity()) == w == mul(identity(), w)
    # prefix of x_2: no cancellation at the seam
    assert mul(parse("a^2 b^2"), parse("a^-1 b")) == parse("a^2 b^2 a^-1 b")


def test_mul_cascading_cancellation():
    u = parse("a b^2 a^-1 b")
    v = parse("b^-1 a b^-2 a^3")
    assert u * v == parse("a^4")
    assert parse("a b a") * parse("a^-1 b^-1 a^-2") == parse("a^-1")


def test_rank_mismatch():
    with pytest.raises(RankMismatchError):
        mul(generator(0, 2), generator(0, 3))
    with pytest.raises(RankMismatchError):
        comm(generator(0, 2), generator(0, 3))


def test_inv_examples():
    assert inv(parse("a b^-1")) == parse("b a^-1")
    assert inv(identity()).is_identity()


def test_conj_examples():
    x = parse("b^-1 a b a^-1")
    assert conj(x, a) == parse("b^-1 a b a b^-1 a^-1 b")
    assert conj(a, a) == a
    assert conj(x, b) == parse("b^-1 a b a^-1 b a b^-1 a^-1 b")


def test_comm_examples():
    assert comm(a, b) == parse("a b a^-1 b^-1")
    w = parse("a b^2 a^-3")
    assert comm(w, w).is_identity()
    assert comm(~a, ~b) == parse("a^-1 b^-1 a b")


def test_power_examples():
    assert power(a, 3) == parse("a^3")
    assert power(parse("a b"), -1) == parse("b^-1 a^-1")
    assert power(parse("a^-1 b"), 2) == parse("a^-1 b a^-1 b")


def test_power_non_cyclically_reduced():
    w = parse("a^2 b a^-1")  # = a (a b) a^-1
    expected = identity()
    for _ in range(5):
        expected = expected * w
    assert w**5 == expected
    v = parse("a b a")  # seam merges a a
    assert v**3 == parse("a b a^2 b a^2 b a")


def test_product_matches_pairwise(rng):
    for _ in range(300):
        ws = [random_word(rng, rng.randint(0, 8)) for _ in range(rng.randint(1, 6))]
        expected = identity()
        for w in ws:
            expected = expected * w
        assert product(*ws) == expected


@given(words, words, words)
def test_group_axioms_hypothesis(u, v, w):
    assert (u * v) * w == u * (v * w)
    assert u * ~u == identity()
    assert ~(u * v) == ~v * ~u
    assert ~~u == u


@given(words, st.integers(-6, 6), st.integers(-6, 6))
def test_power_laws(w, m, n):
    assert w ** (m + n) == w**m * w**n
    assert w**0 == identity()


@given(words, words, words)
def test_conj_and_comm_laws(x, y, g):
    assert conj(identity(), g) == g
    assert conj(x, conj(y, g)) == conj(x * y, g)
    assert comm(x, y) * (y * x) == x * y


def test_group_axioms_bulk(rng):
    # 10^4 random triples of length <= 200
    for _ in range(10_000):
        u, v, w = (random_word(rng, rng.randint(0, 200)) for _ in range(3))
        assert (u * v) * w == u * (v * w)
        assert u * identity() == u
        assert u * ~u == identity()


def test_canonical_form_under_rebracketing(rng):
    for _ in range(500):
        pieces = [random_word(rng, rng.randint(0, 10)) for _ in range(6)]
        left = identity()
        for p in pieces:
            left = left * p
        right = identity()
        for p in reversed(pieces):
            right = p * right
        flat = Word(2, [s for p in pieces for s in p.syllables])
        assert left.syllables == right.syllables == flat.syllables


def test_normal_form_invariant(rng):
    for _ in range(2000):
        w = random_word(rng, rng.randint(0, 50)) * random_word(rng, rng.randint(0, 50))
        syl = w.syllables
        assert all(e != 0 for _, e in syl)
        assert all(syl[i][0] != syl[i + 1][0] for i in range(len(syl) - 1))


def test_nontrivial_words_have_infinite_order(rng):
    for _ in range(300):
        w = random_word(rng, rng.randint(1, 30))
        for n in range(-20, 21):
            if n:
                assert not (w**n).is_identity()


def test_words_are_hashable_values():
    assert len({parse("a b"), parse("a b"), parse("b a")}) == 2
    w = parse("a b")
    with pytest.raises(ValueError):
        w.exps_array[0] = 5


def test_random_word_has_requested_length():
    r = random.Random(0)
    for n in range(30):
        assert len(random_word(r, n)) == n
