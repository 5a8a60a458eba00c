from fractions import Fraction

import pytest
from hypothesis import assume, given, settings, strategies as st

from odometer.nadic import NAdic, NAdicError, delta2, delta3, delta3_closed, parse_rational


def adic(n):
    dens = st.integers(1, 50).filter(lambda d: all(d % p for p in range(2, n + 1) if n % p == 0))
    return st.builds(lambda a, b: NAdic(Fraction(a, b), n), st.integers(-500, 500), dens)


def digit_oracle(x: Fraction, n: int, i: int) -> int:
    # Solve b * r = a mod n^(i+1) by search over residues.
    m = n ** (i + 1)
    a, b = x.numerator, x.denominator
    r = next(r for r in range(m) if (b * r - a) % m == 0)
    return r // n ** i


def test_digit_examples():
    assert NAdic(-1, 2).digits(11) == [1] * 11
    assert NAdic(6, 4).digits(4) == [2, 1, 0, 0]
    third = NAdic(Fraction(1, 3), 4)
    assert third.digit(0) == 3
    assert (third * 3).value == 1


@pytest.mark.parametrize("n", [2, 3, 4, 5, 6, 10])
def test_digits_match_oracle(n):
    for x in [Fraction(1, 7), Fraction(-5, 11), Fraction(22, 13), Fraction(-1)]:
        if any(x.denominator % p == 0 for p in range(2, n + 1) if n % p == 0):
            continue
        v = NAdic(x, n)
        assert v.digits(4) == [digit_oracle(x, n, i) for i in range(4)]


def test_arithmetic_examples():
    assert NAdic(Fraction(1, 3), 4) + NAdic(Fraction(2, 3), 4) == 1
    assert NAdic(-1, 2) * NAdic(-1, 2) == 1
    assert (NAdic(1, 2) + NAdic(-1, 2)).digits(8) == [0] * 8


def test_invert():
    assert NAdic(3, 4).invert() == Fraction(1, 3)
    with pytest.raises(NAdicError):
        NAdic(2, 4).invert()
    assert NAdic(1 - 2 * 1, 2).invert() == -1


def test_shift_down():
    assert NAdic(6, 4).shift_down() == 1
    assert NAdic(-1, 2).shift_down() == -1
    x = NAdic(Fraction(1, 3), 4)
    assert x.shift_down() == Fraction(-2, 3)
    assert x.digits(10) == [x.bar] + x.shift_down().digits(9)


def test_rejects_non_adic():
    with pytest.raises(NAdicError):
        NAdic(Fraction(1, 2), 4)
    with pytest.raises(NAdicError):
        NAdic(1, 4) + NAdic(1, 3)
    with pytest.raises(NAdicError):
        NAdic(1, 4) / 2


def test_parse_and_dump():
    assert parse_rational("1/3", 4) == Fraction(1, 3)
    assert parse_rational("-7", 3) == -7
    with pytest.raises(NAdicError):
        parse_rational("1/2", 4)
    with pytest.raises(NAdicError):
        parse_rational("x", 4)
    assert NAdic(-1, 2).dump(4) == "adic[1 1 1 1]"
    assert NAdic(5, 10).dump().startswith("adic[5 0 0")


def test_delta2_examples():
    assert delta2(3, 2, 4) == 1
    assert delta2(1, 2, 4) == 0
    for j in range(4):
        assert sum(delta2(i, j, 4) for i in range(4)) == j
    assert delta2(NAdic(Fraction(1, 3), 4), 1, 4) == 1


def test_delta3_examples():
    assert delta3(2, 3, 1, 4) == 1
    assert delta3(2, 0, 1, 4) == 0
    for n in range(2, 7):
        for s in range(n):
            for i in range(n):
                assert delta3(s, i, i, n) == 0


@pytest.mark.parametrize("n", range(2, 13))
def test_delta3_closed_form(n):
    for s in range(n):
        for i in range(n):
            for t in range(n):
                assert delta3(s, i, t, n) == delta3_closed(s, i, t, n)


@pytest.mark.parametrize("n", range(2, 13))
def test_cocycle(n):
    for a in range(n):
        for b in range(n):
            for c in range(n):
                assert delta2(a, b, n) + delta2(a + b, c, n) == delta2(b, c, n) + delta2(a, b + c, n)


@settings(max_examples=80, deadline=None)
@given(st.sampled_from([2, 3, 4, 5, 6, 12]).flatmap(lambda n: st.tuples(adic(n), adic(n), adic(n))))
def test_ring_laws(triple):
    a, b, c = triple
    assert (a + b) + c == a + (b + c)
    assert (a * b) * c == a * (b * c)
    assert a * (b + c) == a * b + a * c
    assert a + 0 == a and a * 1 == a
    assert a + (-a) == 0


@settings(max_examples=80, deadline=None)
@given(st.sampled_from([2, 3, 4, 6, 10]).flatmap(lambda n: adic(n)), st.integers(1, 32))
def test_digit_expansion_matches_residue(x, k):
    n = x.n
    total = sum(d * n ** i for i, d in enumerate(x.digits(k)))
    assert (x.value.denominator * total - x.value.numerator) % n ** k == 0


@settings(max_examples=80, deadline=None)
@given(st.sampled_from([2, 3, 4, 5, 6]).flatmap(lambda n: st.tuples(adic(n), adic(n))))
def test_carry_identity(pair):
    eta, kappa = pair
    n = eta.n
    assert delta2(eta, kappa, n) * n == eta.bar + kappa.bar - (eta + kappa).bar


@settings(max_examples=50, deadline=None)
@given(st.sampled_from([2, 3, 4, 5]).flatmap(lambda n: adic(n)))
def test_unit_inverse(x):
    assume(x.is_unit())
    assert x * x.invert() == 1
