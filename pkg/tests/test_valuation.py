import random
from fractions import Fraction

import pytest

from picardtrop.valuation import INF, Val, val_p


def test_val_p_examples():
    assert val_p(50, 5) == Val(2)
    assert val_p(Fraction(7, 5), 5) == Val(-1)
    assert val_p(0, 7) is INF
    assert val_p(Fraction(9, 4), 3) == Val(2)
    assert val_p(Fraction(9, 4), 2) == Val(-2)


def test_inf_absorbs_addition():
    assert INF + Val(3) is INF
    assert Val(3) + INF is INF
    assert INF + INF is INF


def test_inf_ordering():
    assert Val(100) < INF
    assert INF == INF
    assert not INF < INF
    assert not INF > INF
    assert INF > Val(-5)
    assert INF >= INF


def test_scaling():
    assert Val(Fraction(1, 2)) * 4 == Val(2)
    assert INF * 3 is INF
    with pytest.raises(ArithmeticError):
        INF * 0


def test_min_plus_laws_random():
    rng = random.Random(7)
    for _ in range(200):
        a = Fraction(rng.randint(-50, 50), rng.randint(1, 9))
        b = Fraction(rng.randint(-50, 50), rng.randint(1, 9))
        va, vb = Val(a), Val(b)
        assert va + vb == Val(a + b)
        assert min(va, vb) == Val(min(a, b))
        assert min(va, INF) == va


def test_val_p_multiplicative_random():
    rng = random.Random(8)
    for _ in range(100):
        p = rng.choice((5, 7, 13))
        x = Fraction(rng.randint(1, 10**6), rng.randint(1, 10**6))
        y = Fraction(rng.randint(1, 10**6), rng.randint(1, 10**6))
        assert val_p(x * y, p) == val_p(x, p) + val_p(y, p)
        vx, vy = val_p(x, p), val_p(y, p)
        vsum = val_p(x + y, p)
        assert vsum >= min(vx, vy)
        if vx != vy:
            assert vsum == min(vx, vy)


def test_value_accessor():
    assert Val(Fraction(3, 2)).value == Fraction(3, 2)
    with pytest.raises(ArithmeticError):
        INF.value
