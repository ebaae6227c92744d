"""Projective invariants of binary quintics and (4,1)-forms.

Two normalizations coexist on purpose.  The *raw* invariants are the bare
transvectant outputs (plus the displayed rational combinations defining the
discriminant combination and the H-invariant); the displayed numeric
constants only make sense there.  The *primitive* invariants divide each raw
universal polynomial by its content, leaving coprime integer coefficients
with a positive lex-leading coefficient.  All valuation-based classification
uses the primitive normalization: over Q(t) the difference is invisible, but
over a p-adic backend the content itself would otherwise leak valuation.

The universal expansions in a0..a5 (resp. b0..b4, c0, c1) are computed once,
cached as canonical text with a SHA-256 line, and evaluated either through
the cached polynomials (fast integer path) or by running the transvectants
directly on the specialized form.  The two routes must agree bit-exactly and
the selftest checks that they do.
"""

from __future__ import annotations

import hashlib
import os
from dataclasses import dataclass
from fractions import Fraction
from math import lcm
from pathlib import Path

from .errors import NonSeparableError, PicardTropError
from .forms import BinaryForm, FourOneForm
from .multipoly import MultiPoly
from .ratfunc import RatFunc, ONE
from .transvectant import form_power, transvectant, transvectant_scalar
from .unipoly import UniPoly, _int_mul
from .valuation import INF, Val, val_p

QUINTIC_VARS = tuple(f"a{i}" for i in range(6))
FOURONE_VARS = ("b0", "b1", "b2", "b3", "b4", "c0", "c1")

QUINTIC_LABELS = ("I4", "I8", "I12", "I18", "Delta", "H")
QUINTIC_DEGREES = {"I4": 4, "I8": 8, "I12": 12, "I18": 18, "Delta": 8, "H": 12}

FOURONE_LABELS = ("j2", "j3", "j5", "j6", "j9")
FOURONE_DEGREES = {"j2": 2, "j3": 3, "j5": 5, "j6": 6, "j9": 9}

# Displayed constants of the discriminant combination Delta = c0*I4^2 + c1*I8
# and of H = beta*I12 - 396*alpha^3*I4^3, all in the raw normalization.
DELTA_C0 = Fraction(-1, 2746158938062848000000)
DELTA_C1 = Fraction(1, 46987474647852089270599680000000)
H_ALPHA = Fraction(1, 2**17 * 3**7 * 5**3 * 7)
H_BETA = Fraction(
    1, 2**50 * 3**27 * 5**14 * 7**7 * 11**4 * 13**3 * 17 * 19 * 23 * 29
)

CACHE_ENV = "PICARDTROP_CACHE"


# ---------------------------------------------------------------------------
# Universal expansions
# ---------------------------------------------------------------------------


def _compute_quintic_raw() -> dict[str, MultiPoly]:
    a = [MultiPoly.var(QUINTIC_VARS, n) for n in QUINTIC_VARS]
    f = BinaryForm(tuple(a))
    f2 = f * f
    f3 = f2 * f
    f4 = f2 * f2
    f5 = f2 * f3
    f6 = f3 * f3
    f7 = f3 * f4
    raw = {
        "I4": transvectant_scalar(f2, f2, 10),
        "I8": transvectant_scalar(f4, f4, 20),
        "I12": transvectant_scalar(f6, f6, 30),
        "I18": transvectant_scalar(transvectant(f5, f6, 10), f7, 35),
    }
    raw["Delta"] = (raw["I4"] * raw["I4"]).scale(DELTA_C0) + raw["I8"].scale(DELTA_C1)
    raw["H"] = raw["I12"].scale(H_BETA) - (raw["I4"] ** 3).scale(396 * H_ALPHA**3)
    return raw


def _compute_fourone_raw() -> dict[str, MultiPoly]:
    b = [MultiPoly.var(FOURONE_VARS, f"b{i}") for i in range(5)]
    c = [MultiPoly.var(FOURONE_VARS, f"c{i}") for i in range(2)]
    q = BinaryForm(tuple(b))
    ell = BinaryForm(tuple(c))
    qq2 = transvectant(q, q, 2)
    ell4 = form_power(ell, 4)
    ell6 = form_power(ell, 6)
    return {
        "j2": transvectant_scalar(q, q, 4),
        "j3": transvectant_scalar(qq2, q, 4),
        "j5": transvectant_scalar(q, ell4, 4),
        "j6": transvectant_scalar(qq2, ell4, 4),
        "j9": transvectant_scalar(transvectant(q, qq2, 1), ell6, 6),
    }


@dataclass(frozen=True)
class UniversalSystem:
    """Primitive universal polynomials plus the contents relating them to raw."""

    variables: tuple[str, ...]
    labels: tuple[str, ...]
    degrees: dict[str, int]
    primitive: dict[str, MultiPoly]
    content: dict[str, Fraction]

    def raw(self, label: str) -> MultiPoly:
        return self.primitive[label].scale(self.content[label])


def _system_from_raw(variables, labels, degrees, raw) -> UniversalSystem:
    content = {}
    primitive = {}
    for lb in labels:
        c = raw[lb].content()
        content[lb] = c
        primitive[lb] = raw[lb].primitive()
        if primitive[lb].total_degree() != degrees[lb]:
            raise PicardTropError(
                f"universal {lb} has degree {primitive[lb].total_degree()},"
                f" expected {degrees[lb]}"
            )
    return UniversalSystem(tuple(variables), tuple(labels), dict(degrees), primitive, content)


# ---------------------------------------------------------------------------
# Cache serialization: canonical text + SHA-256, bit-exact across platforms
# ---------------------------------------------------------------------------


def _poly_lines(label: str, poly: MultiPoly) -> list[str]:
    lines = [f"poly {label} {len(poly.terms)}"]
    for exps, coeff in poly.sorted_terms():
        if not isinstance(coeff, int):
            raise PicardTropError("cache serialization requires integer coefficients")
        lines.append(" ".join(str(e) for e in exps) + f" {coeff}")
    return lines


def _parse_poly_lines(lines, idx, variables):
    head = lines[idx].split()
    label, nterms = head[1], int(head[2])
    terms = {}
    for k in range(nterms):
        parts = lines[idx + 1 + k].split()
        exps = tuple(int(e) for e in parts[:-1])
        terms[exps] = int(parts[-1])
    return label, MultiPoly(variables, terms), idx + 1 + nterms


def serialize_system(kind: str, system: UniversalSystem) -> str:
    lines = [f"picardtrop-cache {kind} 1", "vars " + " ".join(system.variables)]
    for lb in system.labels:
        c = system.content[lb]
        lines.append(f"content {lb} {c.numerator}/{c.denominator}")
    for lb in system.labels:
        lines.extend(_poly_lines(lb, system.primitive[lb]))
    lines.append("end")
    payload = "\n".join(lines) + "\n"
    digest = hashlib.sha256(payload.encode("ascii")).hexdigest()
    return payload + f"sha256 {digest}\n"


def deserialize_system(kind: str, text: str, labels, degrees) -> UniversalSystem:
    lines = text.splitlines()
    if not lines or not lines[0].startswith(f"picardtrop-cache {kind} "):
        raise PicardTropError(f"not a {kind} cache file")
    if not lines[-1].startswith("sha256 "):
        raise PicardTropError("cache file missing checksum")
    payload = "\n".join(lines[:-1]) + "\n"
    digest = hashlib.sha256(payload.encode("ascii")).hexdigest()
    if digest != lines[-1].split()[1]:
        raise PicardTropError("cache checksum mismatch")
    variables = tuple(lines[1].split()[1:])
    content = {}
    primitive = {}
    idx = 2
    while lines[idx].startswith("content "):
        _, lb, frac = lines[idx].split()
        num, den = frac.split("/")
        content[lb] = Fraction(int(num), int(den))
        idx += 1
    while lines[idx] != "end":
        lb, poly, idx = _parse_poly_lines(lines, idx, variables)
        primitive[lb] = poly
    missing = [lb for lb in labels if lb not in primitive or lb not in content]
    if missing:
        raise PicardTropError(f"cache file missing {missing}")
    return UniversalSystem(variables, tuple(labels), dict(degrees), primitive, content)


def cache_dir() -> Path:
    env = os.environ.get(CACHE_ENV)
    if env:
        return Path(env)
    return Path(__file__).resolve().parent / "_cachedata"


_QUINTIC: UniversalSystem | None = None
_FOURONE: UniversalSystem | None = None


def _load_or_compute(kind, labels, degrees, compute):
    path = cache_dir() / f"{kind}_invariants.txt"
    if path.exists():
        try:
            return deserialize_system(kind, path.read_text("ascii"), labels, degrees)
        except (PicardTropError, ValueError, IndexError):
            pass  # fall through and regenerate
    system = _system_from_raw(
        QUINTIC_VARS if kind == "quintic" else FOURONE_VARS, labels, degrees, compute()
    )
    try:
        path.parent.mkdir(parents=True, exist_ok=True)
        path.write_text(serialize_system(kind, system), "ascii")
    except OSError:
        pass  # read-only installs still work, just without the disk cache
    return system


def universal_quintic_invariants(refresh: bool = False) -> UniversalSystem:
    """The six primitive quintic invariants as polynomials in a0..a5."""
    global _QUINTIC
    if refresh:
        system = _system_from_raw(
            QUINTIC_VARS, QUINTIC_LABELS, QUINTIC_DEGREES, _compute_quintic_raw()
        )
        (cache_dir()).mkdir(parents=True, exist_ok=True)
        (cache_dir() / "quintic_invariants.txt").write_text(
            serialize_system("quintic", system), "ascii"
        )
        _QUINTIC = system
    if _QUINTIC is None:
        _QUINTIC = _load_or_compute(
            "quintic", QUINTIC_LABELS, QUINTIC_DEGREES, _compute_quintic_raw
        )
    return _QUINTIC


def universal_fourone_invariants(refresh: bool = False) -> UniversalSystem:
    """The five primitive (4,1)-invariants as polynomials in b0..b4, c0, c1."""
    global _FOURONE
    if refresh:
        system = _system_from_raw(
            FOURONE_VARS, FOURONE_LABELS, FOURONE_DEGREES, _compute_fourone_raw()
        )
        (cache_dir()).mkdir(parents=True, exist_ok=True)
        (cache_dir() / "fourone_invariants.txt").write_text(
            serialize_system("fourone", system), "ascii"
        )
        _FOURONE = system
    if _FOURONE is None:
        _FOURONE = _load_or_compute(
            "fourone", FOURONE_LABELS, FOURONE_DEGREES, _compute_fourone_raw
        )
    return _FOURONE


# ---------------------------------------------------------------------------
# Fast evaluation of cached universal polynomials at Q(t) points
# ---------------------------------------------------------------------------


def _clear_denominators(values: list[RatFunc]):
    """Common-denominator lift of Q(t) elements to integer coefficient lists.

    Returns (int coefficient lists, scalar s) with values[i] = lift[i] / s,
    where s is a RatFunc.  Evaluating a homogeneous degree-d polynomial on the
    lifts and dividing by s^d recovers the exact value on the inputs.
    """
    denpoly = UniPoly.const(1)
    for v in values:
        if not v.is_polynomial:
            g = denpoly.gcd(v.den)
            denpoly = denpoly * v.den.exact_div(g)
    cleared = []
    for v in values:
        p = v.num * denpoly.exact_div(v.den) if not v.is_polynomial else v.num * denpoly
        cleared.append(p)
    denint = lcm(*(p.den for p in cleared)) if cleared else 1
    lifts = [[c * (denint // p.den) for c in p.ic] for p in cleared]
    scalar = RatFunc(denpoly.scale(denint))
    return lifts, scalar


def _eval_poly_int(poly: MultiPoly, lifts) -> list[int]:
    """Evaluate an integer MultiPoly at integer t-polynomials.

    Terms touching an identically-zero input are skipped up front; variable
    powers are cached so each distinct exponent costs one multiplication.
    """
    zero = {i for i, lift in enumerate(lifts) if not any(lift)}
    powers: dict[tuple[int, int], list[int]] = {}

    def power(i, k):
        got = powers.get((i, k))
        if got is None:
            half = power(i, k // 2) if k > 1 else lifts[i]
            got = _int_mul(half, power(i, k - k // 2)) if k > 1 else lifts[i]
            powers[(i, k)] = got
        return got

    acc: list[int] = []
    for exps, coeff in poly.terms.items():
        if any(exps[i] and i in zero for i in range(len(exps))):
            continue
        term = None
        for i, k in enumerate(exps):
            if k:
                p = power(i, k)
                term = p if term is None else _int_mul(term, p)
        if term is None:
            term = [1]
        if len(acc) < len(term):
            acc.extend([0] * (len(term) - len(acc)))
        for idx, c in enumerate(term):
            if c:
                acc[idx] += coeff * c
    return acc


def evaluate_system(system: UniversalSystem, values: list[RatFunc]) -> dict[str, RatFunc]:
    """Primitive invariant values at a specialization, via the cached expansions."""
    if len(values) != len(system.variables):
        raise ValueError("wrong number of coefficients")
    lifts, scalar = _clear_denominators(values)
    out = {}
    spow: dict[int, RatFunc] = {}
    for lb in system.labels:
        ints = _eval_poly_int(system.primitive[lb], lifts)
        d = system.degrees[lb]
        s = spow.get(d)
        if s is None:
            s = scalar**d
            spow[d] = s
        out[lb] = RatFunc(UniPoly(ints)) / s
    return out


# ---------------------------------------------------------------------------
# Invariant records
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class QuinticInvariants:
    """The six quintic invariants of one form, in a single normalization."""

    I4: object
    I8: object
    I12: object
    I18: object
    Delta: object
    H: object
    normalization: str = "primitive"

    labels = QUINTIC_LABELS
    degrees = QUINTIC_DEGREES

    def items(self):
        return [(lb, getattr(self, lb)) for lb in self.labels]

    def __getitem__(self, lb):
        return getattr(self, lb)


@dataclass(frozen=True)
class FourOneInvariants:
    """The five (4,1)-invariants of one form, in a single normalization."""

    j2: object
    j3: object
    j5: object
    j6: object
    j9: object
    normalization: str = "primitive"

    labels = FOURONE_LABELS
    degrees = FOURONE_DEGREES

    def items(self):
        return [(lb, getattr(self, lb)) for lb in self.labels]

    def __getitem__(self, lb):
        return getattr(self, lb)


def _as_ratfunc_coeffs(f: BinaryForm) -> list[RatFunc]:
    out = []
    for c in f.coeffs:
        if isinstance(c, RatFunc):
            out.append(c)
        elif isinstance(c, (int, Fraction)):
            out.append(RatFunc.from_const(c))
        else:
            raise TypeError(f"cannot evaluate invariants over {type(c).__name__}")
    return out


def evaluate_quintic(
    f: BinaryForm, method: str = "universal", normalization: str = "primitive"
) -> QuinticInvariants:
    """Evaluate the quintic invariants of a degree-5 form over Q(t).

    method="universal" plugs the coefficients into the cached expansions;
    method="direct" reruns the transvectant recipe on the specialized form.
    Both agree exactly and the selftest enforces it.
    """
    if f.degree != 5:
        raise ValueError("evaluate_quintic needs a degree-5 form")
    coeffs = _as_ratfunc_coeffs(f)
    system = universal_quintic_invariants()
    if method == "universal":
        prim = evaluate_system(system, coeffs)
    elif method == "direct":
        raw = _direct_quintic_raw(coeffs)
        prim = {lb: raw[lb] / RatFunc.from_const(system.content[lb]) for lb in QUINTIC_LABELS}
    else:
        raise ValueError(f"unknown method {method!r}")
    if normalization == "raw":
        vals = {lb: prim[lb] * RatFunc.from_const(system.content[lb]) for lb in QUINTIC_LABELS}
        return QuinticInvariants(**vals, normalization="raw")
    return QuinticInvariants(**prim)


def _direct_quintic_raw(coeffs: list[RatFunc]) -> dict[str, RatFunc]:
    f = BinaryForm(tuple(coeffs))
    f2 = f * f
    f3 = f2 * f
    f4 = f2 * f2
    f5 = f2 * f3
    f6 = f3 * f3
    f7 = f3 * f4
    raw = {
        "I4": transvectant_scalar(f2, f2, 10),
        "I8": transvectant_scalar(f4, f4, 20),
        "I12": transvectant_scalar(f6, f6, 30),
        "I18": transvectant_scalar(transvectant(f5, f6, 10), f7, 35),
    }
    raw["Delta"] = raw["I4"] * raw["I4"] * DELTA_C0 + raw["I8"] * DELTA_C1
    raw["H"] = raw["I12"] * H_BETA - raw["I4"] ** 3 * (396 * H_ALPHA**3)
    return raw


def evaluate_fourone(
    qf: FourOneForm, method: str = "universal", check_separable: bool = True
) -> FourOneInvariants:
    """Evaluate the (4,1)-invariants; rejects non-separable q*ell products."""
    coeffs = _as_ratfunc_coeffs(qf.q) + _as_ratfunc_coeffs(qf.ell)
    system = universal_fourone_invariants()
    if method == "universal":
        prim = evaluate_system(system, coeffs)
    elif method == "direct":
        raw = _direct_fourone_raw(coeffs)
        prim = {lb: raw[lb] / RatFunc.from_const(system.content[lb]) for lb in FOURONE_LABELS}
    else:
        raise ValueError(f"unknown method {method!r}")
    if check_separable:
        quintic = BinaryForm(tuple(coeffs[:5])) * BinaryForm(tuple(coeffs[5:]))
        qi = evaluate_quintic(quintic)
        if not qi.Delta:
            raise NonSeparableError(
                "q*ell has a repeated root; the (4,1)-invariants only classify"
                " separable forms"
            )
    return FourOneInvariants(**prim)


def _direct_fourone_raw(coeffs: list[RatFunc]) -> dict[str, RatFunc]:
    q = BinaryForm(tuple(coeffs[:5]))
    ell = BinaryForm(tuple(coeffs[5:]))
    qq2 = transvectant(q, q, 2)
    ell4 = form_power(ell, 4)
    ell6 = form_power(ell, 6)
    return {
        "j2": transvectant_scalar(q, q, 4),
        "j3": transvectant_scalar(qq2, q, 4),
        "j5": transvectant_scalar(q, ell4, 4),
        "j6": transvectant_scalar(qq2, ell4, 4),
        "j9": transvectant_scalar(transvectant(q, qq2, 1), ell6, 6),
    }


# ---------------------------------------------------------------------------
# Valuation backends and tropical points
# ---------------------------------------------------------------------------


class TAdicBackend:
    """Valuation of Q(t) by t-adic order; residue characteristic 0."""

    name = "t-adic"
    residue_char = 0

    def val(self, x: RatFunc) -> Val:
        return x.val_t()

    def describe(self):
        return {"type": "t-adic"}


class PAdicBackend:
    """p-adic valuation on constants; t never enters this backend."""

    def __init__(self, p: int):
        if p < 2:
            raise ValueError("p must be a prime >= 2")
        self.p = p

    name = "p-adic"

    @property
    def residue_char(self) -> int:
        return self.p

    def val(self, x: RatFunc) -> Val:
        return val_p(x.as_fraction(), self.p)

    def describe(self):
        return {"type": "p-adic", "p": self.p}


@dataclass(frozen=True)
class TropicalPoint:
    """Valuations of a weighted invariant tuple, up to the diagonal shift.

    Two points are the same element of the weighted tropical quotient iff
    their canonical representatives agree; the representative subtracts
    lambda * weights with lambda = min over finite entries of v/weight.
    """

    labels: tuple[str, ...]
    weights: tuple[int, ...]
    entries: tuple[Val, ...]

    def __post_init__(self):
        if all(v.is_inf for v in self.entries):
            raise PicardTropError("a tropical point needs one finite entry")

    def canonical(self) -> tuple[Val, ...]:
        lam = min(
            v.value / w for v, w in zip(self.entries, self.weights) if not v.is_inf
        )
        return tuple(
            INF if v.is_inf else Val(v.value - lam * w)
            for v, w in zip(self.entries, self.weights)
        )

    def same_class(self, other: "TropicalPoint") -> bool:
        return (
            self.labels == other.labels
            and self.weights == other.weights
            and self.canonical() == other.canonical()
        )


def tropicalize(inv, backend) -> TropicalPoint:
    """Valuation vector of an invariant record, with degree weights attached."""
    labels = tuple(inv.labels)
    weights = tuple(inv.degrees[lb] for lb in labels)
    entries = tuple(backend.val(inv[lb]) for lb in labels)
    return TropicalPoint(labels, weights, entries)
