"""Sparse multivariate polynomials over a generic coefficient ring.

Terms are a dict from exponent tuples to nonzero coefficients.  Coefficients
are usually int or Fraction (universal invariant expansions) but anything with
ring arithmetic works.  The monomial order used for printing, leading terms
and the content sign convention is plain lexicographic on the fixed variable
tuple, largest exponent vector first.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd, lcm

from .errors import PicardTropError


class MultiPoly:
    """Polynomial in named variables; immutable by convention."""

    __slots__ = ("vars", "terms")

    def __init__(self, variables, terms=None):
        self.vars = tuple(variables)
        clean = {}
        if terms:
            for exps, c in terms.items():
                if len(exps) != len(self.vars):
                    raise ValueError("exponent vector length != number of variables")
                if c:
                    e = tuple(exps)
                    if e in clean:
                        s = clean[e] + c
                        if s:
                            clean[e] = s
                        else:
                            del clean[e]
                    else:
                        clean[e] = c
        self.terms = clean

    # -- constructors --------------------------------------------------

    @classmethod
    def zero(cls, variables):
        return cls(variables)

    @classmethod
    def const(cls, variables, c):
        p = cls(variables)
        if c:
            p.terms[(0,) * len(p.vars)] = c
        return p

    @classmethod
    def var(cls, variables, name, power=1):
        variables = tuple(variables)
        i = variables.index(name)
        e = [0] * len(variables)
        e[i] = power
        p = cls(variables)
        p.terms[tuple(e)] = 1
        return p

    # -- structure -------------------------------------------------------

    @property
    def is_zero(self):
        return not self.terms

    def __bool__(self):
        return bool(self.terms)

    def total_degree(self):
        if not self.terms:
            return -1
        return max(sum(e) for e in self.terms)

    def leading(self):
        """(exponents, coefficient) of the lex-largest monomial."""
        if not self.terms:
            raise PicardTropError("the zero polynomial has no leading term")
        e = max(self.terms)
        return e, self.terms[e]

    def __eq__(self, other):
        if isinstance(other, MultiPoly):
            return self.vars == other.vars and self.terms == other.terms
        if isinstance(other, (int, Fraction)):
            return self == MultiPoly.const(self.vars, other)
        return NotImplemented

    def __len__(self):
        return len(self.terms)

    # -- ring arithmetic ---------------------------------------------------

    def _check(self, other):
        if self.vars != other.vars:
            raise ValueError("polynomials live in different rings")

    def __add__(self, other):
        if not isinstance(other, MultiPoly):
            other = MultiPoly.const(self.vars, other)
        self._check(other)
        out = dict(self.terms)
        for e, c in other.terms.items():
            s = out.get(e)
            if s is None:
                out[e] = c
            else:
                s = s + c
                if s:
                    out[e] = s
                else:
                    del out[e]
        return self._wrap(out)

    __radd__ = __add__

    def __neg__(self):
        return self._wrap({e: -c for e, c in self.terms.items()})

    def __sub__(self, other):
        if not isinstance(other, MultiPoly):
            other = MultiPoly.const(self.vars, other)
        return self + (-other)

    def __rsub__(self, other):
        return MultiPoly.const(self.vars, other) + (-self)

    def __mul__(self, other):
        if not isinstance(other, MultiPoly):
            if not other:
                return MultiPoly(self.vars)
            return self._wrap({e: c * other for e, c in self.terms.items()})
        self._check(other)
        a, b = self.terms, other.terms
        if len(a) > len(b):
            a, b = b, a
        out = {}
        get = out.get
        for e1, c1 in a.items():
            for e2, c2 in b.items():
                e = tuple(map(sum, zip(e1, e2)))
                s = get(e)
                if s is None:
                    out[e] = c1 * c2
                else:
                    s = s + c1 * c2
                    if s:
                        out[e] = s
                    else:
                        del out[e]
        return self._wrap(out)

    __rmul__ = __mul__

    def __pow__(self, k):
        if k < 0:
            raise ValueError("negative power of a polynomial")
        result = MultiPoly.const(self.vars, 1)
        base = self
        while k:
            if k & 1:
                result = result * base
            k >>= 1
            if k:
                base = base * base
        return result

    def _wrap(self, terms):
        p = object.__new__(MultiPoly)
        p.vars = self.vars
        p.terms = terms
        return p

    # -- calculus ----------------------------------------------------------

    def derivative(self, name, order=1):
        """Iterated formal partial derivative with respect to one variable."""
        i = self.vars.index(name)
        terms = self.terms
        for _ in range(order):
            nxt = {}
            for e, c in terms.items():
                k = e[i]
                if k:
                    e2 = e[:i] + (k - 1,) + e[i + 1 :]
                    nxt[e2] = nxt.get(e2, 0) + c * k
            terms = {e: c for e, c in nxt.items() if c}
        return self._wrap(dict(terms))

    # -- substitution ------------------------------------------------------

    def subs(self, values):
        """Total substitution: values maps every variable name to a ring element.

        Powers of each value are cached, so repeated exponents cost one
        multiplication each.  The result lives in the value ring.
        """
        missing = [v for v in self.vars if v not in values]
        if missing:
            raise ValueError(f"no substitution supplied for {missing}")
        vals = [values[v] for v in self.vars]
        cache = {}

        def power(i, k):
            key = (i, k)
            got = cache.get(key)
            if got is None:
                got = vals[i] ** k if k > 1 else vals[i]
                cache[key] = got
            return got

        total = None
        for e, c in sorted(self.terms.items()):
            term = None
            for i, k in enumerate(e):
                if k:
                    p = power(i, k)
                    term = p if term is None else term * p
            term = c if term is None else term * c
            total = term if total is None else total + term
        if total is None:
            return 0
        return total

    # -- content and primitive part -----------------------------------------

    def content(self) -> Fraction:
        """Signed rational c with self = c * primitive(self).

        The magnitude is gcd(numerators)/lcm(denominators) over all
        coefficients; the sign makes the lex-leading coefficient of the
        primitive part positive.  Coefficients must be exact rationals.
        """
        if not self.terms:
            raise PicardTropError("the zero polynomial has no content")
        num = 0
        den = 1
        for c in self.terms.values():
            c = Fraction(c)
            num = gcd(num, c.numerator)
            den = lcm(den, c.denominator)
        c = Fraction(num, den)
        if Fraction(self.terms[max(self.terms)]) < 0:
            c = -c
        return c

    def primitive(self) -> "MultiPoly":
        c = self.content()
        out = {}
        for e, v in self.terms.items():
            q = Fraction(v) / c
            out[e] = q.numerator if q.denominator == 1 else q
        return self._wrap(out)

    def scale(self, c):
        if not c:
            return MultiPoly(self.vars)
        out = {}
        for e, v in self.terms.items():
            w = v * c
            if isinstance(w, Fraction) and w.denominator == 1:
                w = w.numerator
            out[e] = w
        return self._wrap(out)

    def exact_div(self, other: "MultiPoly") -> "MultiPoly":
        """Exact division; raises if the quotient is not polynomial."""
        self._check(other)
        if other.is_zero:
            raise ZeroDivisionError("division by the zero polynomial")
        rem = dict(self.terms)
        le, lc = other.leading()
        quo = {}
        while rem:
            e = max(rem)
            c = rem[e]
            qe = tuple(a - b for a, b in zip(e, le))
            if any(k < 0 for k in qe):
                raise ArithmeticError("inexact polynomial division")
            qc = _coeff_div(c, lc)
            quo[qe] = qc
            for oe, oc in other.terms.items():
                ne = tuple(a + b for a, b in zip(qe, oe))
                s = rem.get(ne, 0) - qc * oc
                if s:
                    rem[ne] = s
                else:
                    rem.pop(ne, None)
        return self._wrap(quo)

    # -- rendering -----------------------------------------------------------

    def sorted_terms(self):
        """Terms in descending lexicographic order (canonical)."""
        return sorted(self.terms.items(), reverse=True)

    def __str__(self):
        if not self.terms:
            return "0"
        parts = []
        for e, c in self.sorted_terms():
            mono = "*".join(
                f"{v}^{k}" if k > 1 else v for v, k in zip(self.vars, e) if k
            )
            cf = Fraction(c) if isinstance(c, int) else c
            neg = isinstance(cf, Fraction) and cf < 0
            mag = -cf if neg else cf
            if mono:
                body = mono if mag == 1 else f"{mag}*{mono}"
            else:
                body = str(mag)
            parts.append(("-" if neg else "+", body))
        s, b = parts[0]
        out = ("-" if s == "-" else "") + b
        for s, b in parts[1:]:
            out += f" {s} {b}"
        return out

    def __repr__(self):
        return f"MultiPoly({self})"


def _coeff_div(a, b):
    if isinstance(a, int) and isinstance(b, int):
        q, r = divmod(a, b)
        if r:
            raise ArithmeticError("inexact coefficient division")
        return q
    q = Fraction(a) / Fraction(b)
    return q.numerator if q.denominator == 1 else q


# ---------------------------------------------------------------------------
# Determinants and resultants
# ---------------------------------------------------------------------------


def bareiss_det(matrix):
    """Fraction-free determinant; works over any ring with exact division.

    Entries may be MultiPoly, int or Fraction.  All intermediate divisions
    are exact by the Bareiss identity.
    """
    m = [row[:] for row in matrix]
    n = len(m)
    if n == 0:
        return 1
    sign = 1
    prev = 1
    for k in range(n - 1):
        if not m[k][k]:
            for i in range(k + 1, n):
                if m[i][k]:
                    m[k], m[i] = m[i], m[k]
                    sign = -sign
                    break
            else:
                return _zero_like(m[k][k])
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                num = m[i][j] * m[k][k] - m[i][k] * m[k][j]
                m[i][j] = num if (prev == 1 or not num) else _div(num, prev)
            m[i][k] = 0
        prev = m[k][k]
    det = m[n - 1][n - 1]
    return -det if sign < 0 else det


def _zero_like(x):
    if isinstance(x, MultiPoly):
        return MultiPoly(x.vars)
    return 0


def _div(a, b):
    if isinstance(a, MultiPoly):
        if isinstance(b, MultiPoly):
            return a.exact_div(b)
        return a.scale(Fraction(1, 1) / Fraction(b))
    if isinstance(b, MultiPoly):
        raise ArithmeticError("scalar / polynomial is not polynomial")
    return _coeff_div(a, b)


def sylvester_matrix(fc, gc):
    """Sylvester matrix of two coefficient sequences (highest power first)."""
    m = len(fc) - 1
    n = len(gc) - 1
    size = m + n
    rows = []
    for i in range(n):
        rows.append([0] * i + list(fc) + [0] * (size - m - 1 - i))
    for i in range(m):
        rows.append([0] * i + list(gc) + [0] * (size - n - 1 - i))
    return rows


def resultant(fc, gc):
    """Resultant of two binary forms given by coefficient lists a0..an.

    The lists are read with a0 multiplying the highest power of x, matching
    the binary-form convention used across the package.
    """
    if len(fc) < 2 or len(gc) < 2:
        raise ValueError("resultant needs two forms of positive degree")
    return bareiss_det(sylvester_matrix(fc, gc))
