"""Binary forms, (4,1)-forms and the Moebius substitution action.

A binary form of degree n is the coefficient tuple (a0, ..., an) of
a0 x^n + a1 x^(n-1) z + ... + an z^n; the degree is structural, so leading
zeros are legitimate (they encode roots at infinity).  Coefficients may live
in any commutative ring: exact rationals, rational functions in t, or
multivariate polynomials for the universal expansions.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .errors import NonSeparableError
from .multipoly import MultiPoly, resultant


class BinaryForm:
    """Homogeneous form in x, z with a fixed structural degree."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs):
        coeffs = tuple(coeffs)
        if not coeffs:
            raise ValueError("a binary form needs at least one coefficient")
        self.coeffs = coeffs

    @property
    def degree(self):
        return len(self.coeffs) - 1

    def __getitem__(self, i):
        return self.coeffs[i]

    def __iter__(self):
        return iter(self.coeffs)

    def __eq__(self, other):
        return isinstance(other, BinaryForm) and self.coeffs == other.coeffs

    def __hash__(self):
        return hash(self.coeffs)

    def is_zero(self):
        return not any(self.coeffs)

    # -- arithmetic --------------------------------------------------------

    def __add__(self, other):
        if self.degree != other.degree:
            raise ValueError("cannot add forms of different degrees")
        return BinaryForm(tuple(a + b for a, b in zip(self.coeffs, other.coeffs)))

    def __sub__(self, other):
        if self.degree != other.degree:
            raise ValueError("cannot subtract forms of different degrees")
        return BinaryForm(tuple(a - b for a, b in zip(self.coeffs, other.coeffs)))

    def __neg__(self):
        return BinaryForm(tuple(-a for a in self.coeffs))

    def scale(self, c):
        return BinaryForm(tuple(a * c for a in self.coeffs))

    def __mul__(self, other):
        """Product of forms (degrees add)."""
        if not isinstance(other, BinaryForm):
            return self.scale(other)
        za = self.coeffs[0] * 0
        out = [za] * (self.degree + other.degree + 1)
        for i, a in enumerate(self.coeffs):
            if a:
                for j, b in enumerate(other.coeffs):
                    if b:
                        out[i + j] = out[i + j] + a * b
        return BinaryForm(out)

    __rmul__ = __mul__

    def __call__(self, x, z):
        acc = None
        n = self.degree
        xp = [None] * (n + 1)
        zp = [None] * (n + 1)
        p = 1
        for k in range(n + 1):
            xp[k] = p
            p = p * x
        p = 1
        for k in range(n + 1):
            zp[k] = p
            p = p * z
        for i, a in enumerate(self.coeffs):
            term = a * xp[n - i] * zp[i]
            acc = term if acc is None else acc + term
        return acc

    def map_coeffs(self, fn):
        return BinaryForm(tuple(fn(a) for a in self.coeffs))

    def __str__(self):
        n = self.degree
        parts = []
        for i, a in enumerate(self.coeffs):
            if not a:
                continue
            mono = []
            if n - i:
                mono.append("x" if n - i == 1 else f"x^{n - i}")
            if i:
                mono.append("z" if i == 1 else f"z^{i}")
            m = "*".join(mono) if mono else "1"
            parts.append(f"({a})*{m}")
        return " + ".join(parts) if parts else "0"

    def __repr__(self):
        return f"BinaryForm(deg={self.degree}, {self})"


def form_from_roots(roots, lead=1):
    """Monic-in-x form lead * prod (x - r z) over the given finite roots."""
    form = BinaryForm((lead,))
    for r in roots:
        form = form * BinaryForm((lead * 0 + 1, -r))
    return form


@dataclass(frozen=True)
class FourOneForm:
    """A quartic q together with a linear form ell; the root of ell is marked."""

    q: BinaryForm
    ell: BinaryForm

    def __post_init__(self):
        if self.q.degree != 4 or self.ell.degree != 1:
            raise ValueError("a (4,1)-form needs degrees exactly (4, 1)")
        if self.ell.is_zero():
            raise ValueError("the linear part must be nonzero")

    @property
    def quintic(self) -> BinaryForm:
        return self.q * self.ell


# ---------------------------------------------------------------------------
# Moebius substitutions
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class Mobius:
    """Matrix [[a, b], [c, d]] acting on forms by x -> ax+bz, z -> cx+dz."""

    a: object
    b: object
    c: object
    d: object

    def det(self):
        return self.a * self.d - self.b * self.c

    def is_unimodular(self) -> bool:
        return self.det() == 1

    def compose(self, other: "Mobius") -> "Mobius":
        """Matrix product self @ other."""
        return Mobius(
            self.a * other.a + self.b * other.c,
            self.a * other.b + self.b * other.d,
            self.c * other.a + self.d * other.c,
            self.c * other.b + self.d * other.d,
        )

    @classmethod
    def identity(cls, one=1):
        return cls(one, one * 0, one * 0, one)


def act(f: BinaryForm, sigma: Mobius) -> BinaryForm:
    """Substitution action f(ax+bz, cx+dz), expanded to a form of equal degree.

    This is a right action: act(act(f, s), t) == act(f, s.compose(t)).
    """
    if not (sigma.a * sigma.d - sigma.b * sigma.c):
        raise ValueError("singular substitution matrix")
    n = f.degree
    p = BinaryForm((sigma.a, sigma.b))
    q = BinaryForm((sigma.c, sigma.d))
    ppow = [BinaryForm((sigma.a * 0 + 1,))]
    qpow = [BinaryForm((sigma.a * 0 + 1,))]
    for _ in range(n):
        ppow.append(ppow[-1] * p)
        qpow.append(qpow[-1] * q)
    acc = None
    for i, ai in enumerate(f.coeffs):
        if not ai:
            continue
        term = (ppow[n - i] * qpow[i]).scale(ai)
        acc = term if acc is None else acc + term
    if acc is None:
        return BinaryForm((f.coeffs[0],) * (n + 1))
    return acc


def act_fourone(qf: FourOneForm, sigma: Mobius) -> FourOneForm:
    return FourOneForm(act(qf.q, sigma), act(qf.ell, sigma))


# ---------------------------------------------------------------------------
# Discriminants
# ---------------------------------------------------------------------------

_UDISC_CACHE: dict[int, MultiPoly] = {}


def universal_discriminant(n: int) -> MultiPoly:
    """Integer-primitive discriminant of the degree-n universal form.

    Computed as Res(f, df/dx) / a0 over Z[a0..an] (the division is exact),
    normalized to coprime integer coefficients with positive lex-leading
    coefficient.  Vanishes exactly on forms with a repeated projective root,
    including roots at infinity.
    """
    if n < 2:
        raise ValueError("discriminant needs degree >= 2")
    got = _UDISC_CACHE.get(n)
    if got is not None:
        return got
    names = tuple(f"a{i}" for i in range(n + 1))
    a = [MultiPoly.var(names, nm) for nm in names]
    fx = [a[i] * (n - i) for i in range(n)]
    res = resultant(a, fx)
    disc = res.exact_div(a[0]).primitive()
    _UDISC_CACHE[n] = disc
    return disc


def discriminant(f: BinaryForm):
    """Integer-primitive discriminant evaluated at f's coefficients.

    Works over any coefficient ring; for degree >= 2 only.
    """
    n = f.degree
    disc = universal_discriminant(n)
    values = {f"a{i}": f.coeffs[i] for i in range(n + 1)}
    return disc.subs(values)


def classical_discriminant_poly(n: int) -> MultiPoly:
    """Res(f, df/dx)/a0 without content normalization (textbook scaling)."""
    names = tuple(f"a{i}" for i in range(n + 1))
    a = [MultiPoly.var(names, nm) for nm in names]
    fx = [a[i] * (n - i) for i in range(n)]
    sign = -1 if (n * (n - 1) // 2) % 2 else 1
    res = resultant(a, fx).exact_div(a[0])
    return res.scale(sign) if sign < 0 else res


def separable(f: BinaryForm) -> bool:
    d = discriminant(f)
    return bool(d)


def require_separable(f: BinaryForm, what: str = "form") -> None:
    if not separable(f):
        raise NonSeparableError(f"the {what} has a repeated root")


def fraction_mobius(a, b, c, d) -> Mobius:
    return Mobius(Fraction(a), Fraction(b), Fraction(c), Fraction(d))
