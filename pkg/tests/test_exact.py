from fractions import Fraction

from hypothesis import given, strategies as st
import pytest

from wpverify.exact import (I, OMEGA, ONE, ZERO, ZETA, CycNumber, cyc, cyc_add, cyc_inv, cyc_mul,
                            rational, render, simplify)

small = st.fractions(min_value=-50, max_value=50, max_denominator=30)
cycs = st.tuples(small, small, small, small).map(CycNumber)
nonzero = cycs.filter(bool)


def test_basis_addition():
    assert cyc_add(CycNumber((1, 0, 0, 0)), CycNumber((0, 1, 0, 0))) == CycNumber((1, 1, 0, 0))


def test_add_zero():
    x = CycNumber((1, 2, 3, 4))
    assert cyc_add(x, cyc(0)) == x


def test_omega_plus_omega_squared():
    assert OMEGA + OMEGA * OMEGA == -1


def test_i_squared():
    assert cyc_mul(I, I) == -1


def test_omega_cubed():
    assert OMEGA * OMEGA * OMEGA == 1
    assert OMEGA != 1


def test_zeta_powers():
    z3 = ZETA ** 3
    assert z3 == I
    assert z3 * z3 == -1
    assert ZETA ** 4 == ZETA ** 2 - 1
    assert ZETA ** 12 == 1
    assert all(ZETA ** j != 1 for j in range(1, 12))


def test_inverses():
    assert cyc_inv(cyc(1)) == 1
    assert cyc_inv(I) == -I
    x = 1 - OMEGA
    assert x * cyc_inv(x) == 1


def test_inverse_of_zero():
    with pytest.raises(ZeroDivisionError):
        cyc_inv(cyc(0))


@given(cycs, cycs, cycs)
def test_ring_axioms(x, y, z):
    assert (x + y) + z == x + (y + z)
    assert (x * y) * z == x * (y * z)
    assert x * (y + z) == x * y + x * z
    assert x * y == y * x


@given(nonzero)
def test_multiplicative_inverse(x):
    assert x * x.inverse() == 1
    assert x / x == 1


@given(small, small)
def test_rational_embedding(a, b):
    x, y = cyc(a), cyc(b)
    assert x + y == a + b
    assert x * y == a * b
    assert (x * y).is_rational()


def test_rationals_reduced():
    r = rational(6, -4)
    assert r.numerator == -3 and r.denominator == 2
    assert rational(0, 5) == ZERO and rational(0, 5).denominator == 1
    assert rational(r.numerator, r.denominator) == r


def test_mixed_comparisons():
    assert cyc(rational(1, 2)) == Fraction(1, 2)
    assert rational(3) == cyc(3)
    assert hash(cyc(rational(2, 3))) == hash(rational(2, 3))


def test_conjugate():
    assert I.conjugate() == -I
    assert OMEGA.conjugate() == OMEGA * OMEGA
    assert (ZETA * ZETA.conjugate()) == 1


def test_simplify_demotes_rationals():
    assert simplify(cyc(rational(5, 7))) == rational(5, 7)
    assert not isinstance(simplify(cyc(rational(5, 7))), CycNumber)


def test_render():
    assert render(rational(-4, 3) + 2 * OMEGA) == "-4/3+2ω"
    assert render(ONE) == "1"
    assert render(2 * I - 1) == "-1+2i"
    assert render(rational(3, 5)) == "3/5"


def test_thousand_random_inverses():
    import random
    rng = random.Random(12)
    done = 0
    while done < 1000:
        x = CycNumber(tuple(rational(rng.randint(-20, 20), rng.randint(1, 12)) for _ in range(4)))
        if not x:
            continue
        y = rng.choice([x, x * OMEGA, x + I])
        if not y:
            continue
        assert y * cyc_inv(y) == 1
        done += 1
