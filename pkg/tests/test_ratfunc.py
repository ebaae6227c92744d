import random
from fractions import Fraction

import pytest

from picardtrop.errors import PicardTropError
from picardtrop.ratfunc import ONE, ZERO, RatFunc, T
from picardtrop.unipoly import UniPoly
from picardtrop.valuation import INF, Val


def test_val_t_examples():
    assert (T**2 - 3 * T**3).val_t() == Val(2)
    assert ZERO.val_t() is INF
    assert ((T + 1) / T).val_t() == Val(-1)


def test_residue_examples():
    assert (3 * T**2 + T**4).residue() == 3
    assert ((2 * T) / (T * (1 + T))).residue() == 2
    assert RatFunc.from_const(-5).residue() == -5
    with pytest.raises(PicardTropError):
        ZERO.residue()


def test_normalization_invariants():
    x = (T**2 + T) / T
    assert x == T + 1
    assert x.is_polynomial
    # lowest nonzero coefficient of the denominator is 1
    y = RatFunc(UniPoly([1]), UniPoly([0, 2]))  # 1/(2t)
    assert y.den.coeff(y.den.ord_t()) == 1
    assert y == RatFunc(UniPoly([Fraction(1, 2)]), UniPoly([0, 1]))
    with pytest.raises(ZeroDivisionError):
        RatFunc(UniPoly([1]), UniPoly())


def _random_ratfunc(rng):
    num = UniPoly([Fraction(rng.randint(-6, 6)) for _ in range(rng.randint(1, 5))])
    den = UniPoly()
    while den.is_zero:
        den = UniPoly([Fraction(rng.randint(-6, 6)) for _ in range(rng.randint(1, 4))])
    return RatFunc(num, den)


def test_val_multiplicative_random():
    rng = random.Random(21)
    for _ in range(80):
        x = _random_ratfunc(rng)
        y = _random_ratfunc(rng)
        if x.is_zero or y.is_zero:
            continue
        assert (x * y).val_t() == x.val_t() + y.val_t()
        assert (x * y).residue() == x.residue() * y.residue()


def test_val_ultrametric_random():
    rng = random.Random(22)
    for _ in range(80):
        x = _random_ratfunc(rng)
        y = _random_ratfunc(rng)
        s = (x + y).val_t()
        assert s >= min(x.val_t(), y.val_t())
        if x.val_t() != y.val_t():
            assert s == min(x.val_t(), y.val_t())


def test_arithmetic_matches_evaluation():
    rng = random.Random(23)
    points = 0
    while points < 20:
        x = _random_ratfunc(rng)
        y = _random_ratfunc(rng)
        t0 = Fraction(rng.randint(-12, 12), rng.randint(1, 5))
        try:
            xa, ya = x(t0), y(t0)
        except ZeroDivisionError:
            continue
        points += 1
        assert (x + y)(t0) == xa + ya
        assert (x - y)(t0) == xa - ya
        assert (x * y)(t0) == xa * ya
        if ya != 0 and not y.is_zero:
            assert (x / y)(t0) == xa / ya


def test_pow_and_div():
    x = (1 + T) / T
    assert x**3 == (1 + T) ** 3 / T**3
    assert x**-2 == T**2 / (1 + T) ** 2
    with pytest.raises(ZeroDivisionError):
        ONE / ZERO
    with pytest.raises(ZeroDivisionError):
        ZERO**-1


def test_str_forms():
    assert str(T**2 - 1) == "t^2 - 1"
    assert str((1 - T) / T**2) == "(-t + 1)/(t^2)"
    assert str(ZERO) == "0"


def test_constants():
    x = RatFunc.from_const(Fraction(3, 7))
    assert x.is_constant and x.as_fraction() == Fraction(3, 7)
    with pytest.raises(PicardTropError):
        T.as_fraction()
