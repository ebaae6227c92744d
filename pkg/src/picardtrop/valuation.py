"""Valuation values: exact rationals extended by +infinity (the valuation of 0).

``Val`` is the codomain of every valuation in the package (t-adic order on
Q(t), p-adic order on Q).  It is a min-plus quantity: addition of values
corresponds to multiplication of field elements, ``min`` to addition.
Comparisons treat INF as larger than every finite value and equal to itself,
which is exactly the convention the tree-type inequalities need: a vanishing
invariant satisfies every lower bound and no strict upper bound.
"""

from __future__ import annotations

from fractions import Fraction
from functools import total_ordering


@total_ordering
class Val:
    """A rational number or +infinity, with min-plus semiring behaviour."""

    __slots__ = ("_v",)

    def __init__(self, value):
        if value is None or isinstance(value, Val):
            raise TypeError("Val takes an int/Fraction; use INF for infinity")
        self._v = Fraction(value)

    @property
    def is_inf(self) -> bool:
        return False

    @property
    def value(self) -> Fraction:
        """The finite value; raises on INF."""
        return self._v

    def __add__(self, other):
        other = _as_val(other)
        if other.is_inf:
            return INF
        return Val(self._v + other._v)

    __radd__ = __add__

    def __mul__(self, k):
        """Scale by an exact rational (degree weights in tropical points)."""
        if isinstance(k, Val):
            raise TypeError("Val*Val has no meaning; scale by a rational")
        return Val(self._v * Fraction(k))

    __rmul__ = __mul__

    def __eq__(self, other):
        other = _as_val(other)
        return (not other.is_inf) and self._v == other._v

    def __lt__(self, other):
        other = _as_val(other)
        if other.is_inf:
            return True
        return self._v < other._v

    def __hash__(self):
        return hash(("Val", self._v))

    def __repr__(self):
        return f"Val({self._v})"

    def __str__(self):
        return str(self._v)


class _ValInf(Val):
    """The valuation of zero. Absorbing for +, maximal for comparisons."""

    __slots__ = ()

    def __init__(self):  # noqa: D401 - bypass Val.__init__
        pass

    @property
    def is_inf(self) -> bool:
        return True

    @property
    def value(self) -> Fraction:
        raise ArithmeticError("infinite valuation has no finite value")

    def __add__(self, other):
        _as_val(other)
        return INF

    __radd__ = __add__

    def __mul__(self, k):
        if isinstance(k, Val):
            raise TypeError("Val*Val has no meaning; scale by a rational")
        if Fraction(k) <= 0:
            raise ArithmeticError("INF may only be scaled by a positive rational")
        return INF

    __rmul__ = __mul__

    def __eq__(self, other):
        return _as_val(other).is_inf

    def __lt__(self, other):
        return False

    def __hash__(self):
        return hash("Val.INF")

    def __repr__(self):
        return "INF"

    def __str__(self):
        return "inf"


INF = _ValInf()


def _as_val(x) -> Val:
    return x if isinstance(x, Val) else Val(x)


def val_min(*vals: Val) -> Val:
    return min(vals)


def val_p(x, p: int) -> Val:
    """p-adic valuation of an exact rational; INF iff x = 0.

    Primality of p is the caller's responsibility (the classifier rejects
    p in {2, 3} and applies the residue-characteristic-11 fallback itself).
    """
    x = Fraction(x)
    if x == 0:
        return INF
    if p < 2:
        raise ValueError(f"p must be a prime >= 2, got {p}")
    v = 0
    n = x.numerator
    while n % p == 0:
        n //= p
        v += 1
    d = x.denominator
    while d % p == 0:
        d //= p
        v -= 1
    return Val(v)
