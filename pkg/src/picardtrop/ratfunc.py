"""Rational functions in one uniformizer t over Q, with the t-adic valuation.

This is the concrete model of the non-archimedean coefficient field: exact
elements num/den of Q(t), reduced so that gcd(num, den) = 1 and the lowest
nonzero coefficient of den is 1.  Under that normalization the valuation is
read off the lowest terms and the residue is an exact rational.
"""

from __future__ import annotations

from fractions import Fraction

from .errors import PicardTropError
from .unipoly import UniPoly
from .valuation import INF, Val

_ONE = UniPoly.const(1)


class RatFunc:
    """Element of Q(t), immutable and canonically reduced."""

    __slots__ = ("num", "den")

    def __init__(self, num=0, den=1):
        num = num if isinstance(num, UniPoly) else _to_unipoly(num)
        den = den if isinstance(den, UniPoly) else _to_unipoly(den)
        if den.is_zero:
            raise ZeroDivisionError("zero denominator in Q(t)")
        if num.is_zero:
            self.num, self.den = UniPoly(), _ONE
            return
        if den == _ONE:
            self.num, self.den = num, den
            return
        g = num.gcd(den)
        if g.degree > 0:
            num = num.exact_div(g)
            den = den.exact_div(g)
        # scale so the lowest nonzero coefficient of den is exactly 1
        unit = den.coeff(den.ord_t())
        if unit != 1:
            num = num.scale(1 / unit)
            den = den.scale(1 / unit)
        self.num, self.den = num, den

    # -- constructors --------------------------------------------------

    @classmethod
    def from_const(cls, c) -> "RatFunc":
        return cls(UniPoly.const(Fraction(c)))

    @classmethod
    def t(cls) -> "RatFunc":
        return cls(UniPoly.t_power(1))

    # -- predicates ------------------------------------------------------

    @property
    def is_zero(self) -> bool:
        return self.num.is_zero

    @property
    def is_polynomial(self) -> bool:
        return self.den == _ONE

    @property
    def is_constant(self) -> bool:
        return self.den == _ONE and self.num.degree <= 0

    def as_fraction(self) -> Fraction:
        if not self.is_constant:
            raise PicardTropError(f"{self} is not a constant rational")
        return self.num.coeff(0)

    def __bool__(self):
        return not self.num.is_zero

    def __eq__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self.num == other.num and self.den == other.den

    def __hash__(self):
        return hash((self.num, self.den))

    # -- field arithmetic --------------------------------------------------

    def __add__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        if self.den == _ONE and other.den == _ONE:
            return _poly(self.num + other.num)
        return RatFunc(self.num * other.den + other.num * self.den, self.den * other.den)

    __radd__ = __add__

    def __neg__(self):
        r = object.__new__(RatFunc)
        r.num, r.den = -self.num, self.den
        return r

    def __sub__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return _coerce(other) + (-self)

    def __mul__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        if self.den == _ONE and other.den == _ONE:
            return _poly(self.num * other.num)
        return RatFunc(self.num * other.num, self.den * other.den)

    __rmul__ = __mul__

    def __truediv__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        if other.is_zero:
            raise ZeroDivisionError("division by the zero function")
        return RatFunc(self.num * other.den, self.den * other.num)

    def __rtruediv__(self, other):
        return _coerce(other) / self

    def __pow__(self, k: int):
        if k < 0:
            if self.is_zero:
                raise ZeroDivisionError("negative power of zero")
            return RatFunc(self.den ** (-k), self.num ** (-k))
        if self.den == _ONE:
            return _poly(self.num**k)
        return RatFunc(self.num**k, self.den**k)

    # -- valuation interface -------------------------------------------

    def val_t(self) -> Val:
        """t-adic order: ord_t(num) - ord_t(den); INF iff zero."""
        if self.num.is_zero:
            return INF
        d = 0 if self.den == _ONE else self.den.ord_t()
        return Val(self.num.ord_t() - d)

    def residue(self) -> Fraction:
        """Value of t^(-val) * self at t = 0; nonzero by construction."""
        if self.num.is_zero:
            raise PicardTropError("the residue of zero is undefined")
        a = self.num.ord_t()
        b = 0 if self.den == _ONE else self.den.ord_t()
        return self.num.coeff(a) / self.den.coeff(b)

    # -- evaluation & rendering --------------------------------------------

    def __call__(self, x) -> Fraction:
        x = Fraction(x)
        d = self.den(x)
        if d == 0:
            raise ZeroDivisionError(f"pole at t = {x}")
        return self.num(x) / d

    def __str__(self):
        if self.den == _ONE:
            return str(self.num)
        return f"({self.num})/({self.den})"

    def __repr__(self):
        return f"RatFunc({self})"


def _poly(num: UniPoly) -> RatFunc:
    r = object.__new__(RatFunc)
    r.num, r.den = num, _ONE
    return r


def _to_unipoly(x) -> UniPoly:
    if isinstance(x, (int, Fraction)):
        return UniPoly.const(Fraction(x))
    raise TypeError(f"cannot build a rational function from {type(x).__name__}")


def _coerce(x):
    if isinstance(x, RatFunc):
        return x
    if isinstance(x, (int, Fraction)):
        return RatFunc.from_const(x)
    if isinstance(x, UniPoly):
        return _poly(x)
    return NotImplemented


T = RatFunc.t()
ZERO = RatFunc()
ONE = RatFunc.from_const(1)
