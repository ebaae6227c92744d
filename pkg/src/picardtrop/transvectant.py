"""The transvectant: the bilinear differential operator generating all invariants.

For forms g, h of degrees m, n and 0 <= r <= min(m, n),

    <g, h>_r = sum_{i=0}^{r} (-1)^i C(r, i)
               * d^r g / dx^(r-i) dz^i  *  d^r h / dx^i dz^(r-i),

a form of degree m + n - 2r.  A full transvection (r = m = n) lands in degree
zero and carries the invariant as its single coefficient.  No binomial
rescaling of the input coefficients is applied anywhere: the universal form
here is sum a_j x^(n-j) z^j on the nose, because binomial factors are not
units in a field with positive residue characteristic.
"""

from __future__ import annotations

from math import comb

from .forms import BinaryForm

_FALLING: dict[tuple[int, int], int] = {}


def _falling(n: int, k: int) -> int:
    """n (n-1) ... (n-k+1)."""
    got = _FALLING.get((n, k))
    if got is None:
        got = 1
        for j in range(k):
            got *= n - j
        _FALLING[(n, k)] = got
    return got


def diff_splits(g: BinaryForm, r: int) -> list[BinaryForm]:
    """All r-th order partials of g in one pass.

    Returns D with D[i] = d^r g / dx^(r-i) dz^i, each a form of degree
    deg(g) - r.  Computing the whole family at once is what keeps the big
    transvectants (degree-30 and degree-35 operands) affordable.
    """
    m = g.degree
    if r > m:
        raise ValueError("derivative order exceeds the degree")
    out = []
    for i in range(r + 1):
        coeffs = []
        for k in range(m - r + 1):
            j = k + i
            c = g.coeffs[j] * (_falling(m - j, r - i) * _falling(j, i))
            coeffs.append(c)
        out.append(BinaryForm(coeffs))
    return out


def transvectant(g: BinaryForm, h: BinaryForm, r: int) -> BinaryForm:
    """r-th transvectant of g and h; degree deg(g) + deg(h) - 2r."""
    m, n = g.degree, h.degree
    if r < 0 or r > min(m, n):
        raise ValueError(f"transvectant order {r} outside [0, min({m}, {n})]")
    if r == 0:
        return g * h
    dg = diff_splits(g, r)
    dh = diff_splits(h, r)
    acc = None
    for i in range(r + 1):
        term = dg[i] * dh[r - i]
        c = comb(r, i)
        if i % 2:
            c = -c
        term = term.scale(c)
        acc = term if acc is None else acc + term
    return acc


def transvectant_scalar(g: BinaryForm, h: BinaryForm, r: int):
    """Full transvection reduced to its scalar coefficient."""
    out = transvectant(g, h, r)
    if out.degree != 0:
        raise ValueError("not a full transvection; result has positive degree")
    return out.coeffs[0]


def form_power(f: BinaryForm, k: int) -> BinaryForm:
    """f^k by binary powering over the coefficient ring."""
    if k < 0:
        raise ValueError("negative power of a form")
    if k == 0:
        return BinaryForm((f.coeffs[0] * 0 + 1,))
    result = None
    base = f
    while k:
        if k & 1:
            result = base if result is None else result * base
        k >>= 1
        if k:
            base = base * base
    return result
