"""Dense univariate polynomials over Q in the uniformizer t.

Coefficients are held as a tuple of integers over one common denominator
(gcd-reduced), so all ring operations run on machine/big integers.  Products
of large polynomials go through Kronecker substitution: pack the coefficients
into one big integer, multiply once, unpack signed digits.  This keeps the
invariant-evaluation hot path inside CPython's fast big-int multiply.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd, lcm

_NAIVE_CUTOFF = 256  # term-pair count below which schoolbook beats packing


def _int_mul(a, b):
    """Multiply two integer coefficient sequences (low power first)."""
    if not a or not b:
        return []
    if len(a) * len(b) <= _NAIVE_CUTOFF:
        out = [0] * (len(a) + len(b) - 1)
        for i, ca in enumerate(a):
            if ca:
                for j, cb in enumerate(b):
                    out[i + j] += ca * cb
        return out
    return _kronecker_mul(a, b)


def _kronecker_mul(a, b):
    """Signed Kronecker-substitution product of integer coefficient lists."""
    amax = max(abs(c) for c in a)
    bmax = max(abs(c) for c in b)
    if amax == 0 or bmax == 0:
        return [0] * (len(a) + len(b) - 1)
    # every product coefficient is a sum of at most min(len) term products
    bound = min(len(a), len(b)) * amax * bmax
    bits = bound.bit_length() + 2
    pa = sum(c << (i * bits) for i, c in enumerate(a) if c)
    pb = sum(c << (i * bits) for i, c in enumerate(b) if c)
    prod = pa * pb
    n = len(a) + len(b) - 1
    out = []
    mask = (1 << bits) - 1
    half = 1 << (bits - 1)
    for _ in range(n):
        d = prod & mask
        if d >= half:
            d -= 1 << bits
        out.append(d)
        prod = (prod - d) >> bits
    if prod != 0:
        raise AssertionError("kronecker unpack left a nonzero carry")
    return out


def _strip(ic):
    n = len(ic)
    while n and ic[n - 1] == 0:
        n -= 1
    return tuple(ic[:n])


class UniPoly:
    """Polynomial sum(c_i t^i) with c_i in Q, canonical up to nothing (unique rep).

    Internal form: integer coefficients ``ic`` over a positive denominator
    ``den`` with gcd(ic..., den) = 1 and nonzero trailing coefficient.
    The zero polynomial is ic = (), den = 1.
    """

    __slots__ = ("ic", "den")

    def __init__(self, coeffs=(), den=1):
        if isinstance(coeffs, UniPoly):
            self.ic, self.den = coeffs.ic, coeffs.den
            return
        if den == 0:
            raise ZeroDivisionError("zero denominator")
        ints = []
        extra = 1
        for c in coeffs:
            if isinstance(c, Fraction):
                ints = [v * c.denominator for v in ints]
                extra *= c.denominator
                ints.append(c.numerator * (extra // c.denominator))
            else:
                ints.append(int(c) * extra)
        self.ic, self.den = _normalize(ints, den * extra)

    # -- constructors ------------------------------------------------------

    @classmethod
    def _raw(cls, ic, den):
        p = object.__new__(cls)
        p.ic, p.den = _normalize(list(ic), den)
        return p

    @classmethod
    def const(cls, c):
        c = Fraction(c)
        return cls._raw([c.numerator], c.denominator)

    @classmethod
    def t_power(cls, k):
        if k < 0:
            raise ValueError("negative power")
        return cls._raw([0] * k + [1], 1)

    # -- structure ---------------------------------------------------------

    @property
    def is_zero(self):
        return not self.ic

    @property
    def degree(self):
        """Degree; -1 for the zero polynomial."""
        return len(self.ic) - 1

    def coeff(self, i) -> Fraction:
        if 0 <= i < len(self.ic):
            return Fraction(self.ic[i], self.den)
        return Fraction(0)

    def coeffs(self):
        return tuple(Fraction(c, self.den) for c in self.ic)

    def ord_t(self):
        """Index of the lowest nonzero coefficient; raises on zero."""
        for i, c in enumerate(self.ic):
            if c:
                return i
        raise ValueError("the zero polynomial has no t-order")

    def __bool__(self):
        return bool(self.ic)

    def __eq__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self.ic == other.ic and self.den == other.den

    def __hash__(self):
        return hash((self.ic, self.den))

    # -- arithmetic --------------------------------------------------------

    def __add__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        d = lcm(self.den, other.den)
        ma, mb = d // self.den, d // other.den
        n = max(len(self.ic), len(other.ic))
        out = [0] * n
        for i, c in enumerate(self.ic):
            out[i] = c * ma
        for i, c in enumerate(other.ic):
            out[i] += c * mb
        return UniPoly._raw(out, d)

    __radd__ = __add__

    def __neg__(self):
        return UniPoly._raw([-c for c in self.ic], self.den)

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
        return UniPoly._raw(_int_mul(self.ic, other.ic), self.den * other.den)

    __rmul__ = __mul__

    def __pow__(self, k):
        if k < 0:
            raise ValueError("negative power of a polynomial")
        result = UniPoly._raw([1], 1)
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base if k > 1 else base
            k >>= 1
        return result

    def divmod(self, other):
        """Euclidean division over Q; returns (quotient, remainder)."""
        if other.is_zero:
            raise ZeroDivisionError("division by the zero polynomial")
        rem = list(Fraction(c, self.den) for c in self.ic)
        dc = [Fraction(c, other.den) for c in other.ic]
        dn = len(dc)
        if len(rem) < dn:
            return UniPoly(), self
        quo = [Fraction(0)] * (len(rem) - dn + 1)
        lead = dc[-1]
        for i in range(len(rem) - dn, -1, -1):
            q = rem[i + dn - 1] / lead
            if q:
                quo[i] = q
                for j in range(dn):
                    rem[i + j] -= q * dc[j]
        return UniPoly(quo), UniPoly(rem[: dn - 1])

    def exact_div(self, other):
        q, r = self.divmod(other)
        if not r.is_zero:
            raise ArithmeticError("inexact polynomial division")
        return q

    def scale(self, c):
        """Multiply by an exact rational scalar."""
        c = Fraction(c)
        return UniPoly._raw([v * c.numerator for v in self.ic], self.den * c.denominator)

    # -- gcd ---------------------------------------------------------------

    def gcd(self, other):
        """Monic gcd in Q[t] (primitive PRS on integer coefficients)."""
        a, b = _strip(self.ic), _strip(other.ic)
        if not a:
            return _monic_from_int(b)
        if not b:
            return _monic_from_int(a)
        a, b = _int_primitive(a), _int_primitive(b)
        while b:
            r = _int_prem(a, b)
            a, b = b, _int_primitive(_strip(r))
        return _monic_from_int(a)

    # -- evaluation & rendering --------------------------------------------

    def __call__(self, x):
        x = Fraction(x)
        acc = Fraction(0)
        for c in reversed(self.ic):
            acc = acc * x + c
        return acc / self.den

    def __str__(self):
        if not self.ic:
            return "0"
        parts = []
        for i in range(len(self.ic) - 1, -1, -1):
            c = self.coeff(i)
            if not c:
                continue
            sign = "-" if c < 0 else "+"
            mag = -c if c < 0 else c
            if i == 0:
                body = str(mag)
            else:
                tpow = "t" if i == 1 else f"t^{i}"
                body = tpow if mag == 1 else f"{mag}*{tpow}"
            parts.append((sign, body))
        first_sign, first_body = parts[0]
        out = ("-" if first_sign == "-" else "") + first_body
        for sign, body in parts[1:]:
            out += f" {sign} {body}"
        return out

    def __repr__(self):
        return f"UniPoly({self})"


def _normalize(ints, den):
    if den < 0:
        den = -den
        ints = [-c for c in ints]
    ic = _strip(ints)
    if not ic:
        return (), 1
    g = den
    for c in ic:
        g = gcd(g, c)
        if g == 1:
            break
    if g > 1:
        ic = tuple(c // g for c in ic)
        den //= g
    return ic, den


def _coerce(x):
    if isinstance(x, UniPoly):
        return x
    if isinstance(x, (int, Fraction)):
        return UniPoly.const(x)
    return NotImplemented


def _int_primitive(a):
    g = 0
    for c in a:
        g = gcd(g, c)
        if g == 1:
            return a
    if a and a[-1] < 0:
        g = -g
    return tuple(c // g for c in a)


def _int_prem(a, b):
    """Pseudo-remainder of integer coefficient tuples (lc(b)^k * a mod b)."""
    a = list(a)
    lead = b[-1]
    db = len(b) - 1
    while len(a) - 1 >= db and any(a):
        if a[-1] == 0:
            a.pop()
            continue
        shift = len(a) - 1 - db
        top = a[-1]
        a = [c * lead for c in a]
        for j in range(db + 1):
            a[shift + j] -= top * b[j]
        a.pop()
    return a


def _monic_from_int(ic):
    ic = _strip(ic)
    if not ic:
        return UniPoly()
    return UniPoly._raw(ic, ic[-1]) if ic[-1] > 0 else UniPoly._raw([-c for c in ic], -ic[-1])
