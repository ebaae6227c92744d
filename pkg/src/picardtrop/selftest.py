"""Internal consistency suite: regenerates caches and verifies every recorded constant.

What is checked, and against what:

  * cache round-trip: the shipped universal expansions deserialize, their
    checksums match, and recomputing from scratch reproduces them bit-exactly;
  * the discriminant combination: c0*I4^2 + c1*I8 (raw normalization, the two
    displayed constants) equals the classical Sylvester-resultant discriminant
    Res(f, df/dx)/a0 of the universal quintic, exactly;
  * the H specialization: raw H at (0,0,1,0,a4,a5) equals the integer-primitive
    discriminant of the cubic, via the independent resultant route;
  * the invariant-relation table: each quintic invariant, written in the
    primitive normalization as a polynomial in the primitive (4,1)-invariants,
    with the measured coefficient vector (two displayed coefficients differ
    from the measured ones; both versions are recorded);
  * transvectant equivariance under random unimodular substitutions, dual-path
    evaluation agreement, and the diagonal-substitution scaling exponents.

Everything runs on exact arithmetic; a failure raises no exception but is
reported as a failing check so the CLI can exit with the internal-error code.
"""

from __future__ import annotations

import json
import random
from dataclasses import dataclass
from fractions import Fraction

from .forms import BinaryForm, Mobius, act, classical_discriminant_poly, universal_discriminant
from .invariants import (
    DELTA_C0,
    DELTA_C1,
    FOURONE_DEGREES,
    FOURONE_LABELS,
    FOURONE_VARS,
    QUINTIC_DEGREES,
    QUINTIC_LABELS,
    QUINTIC_VARS,
    _compute_fourone_raw,
    _compute_quintic_raw,
    _system_from_raw,
    deserialize_system,
    evaluate_quintic,
    serialize_system,
    universal_fourone_invariants,
    universal_quintic_invariants,
)
from .multipoly import MultiPoly
from .ratfunc import RatFunc
from .transvectant import transvectant, transvectant_scalar
from .unipoly import UniPoly

# The invariant-relation table in the primitive normalization, as measured
# against this implementation (which reproduces every residue and constant
# anchor of the source computations).  Each row expresses a quintic invariant
# as a combination of products of the primitive (4,1)-invariants; "displayed"
# carries the published coefficient where it differs from the measured one.
IDENTITY_TABLE = {
    "I4": (
        (("j2", "j6"), Fraction(2, 3), None),
        (("j3", "j5"), Fraction(-1, 3), Fraction(-1, 2)),
    ),
    "I8": (
        (("j2", "j2", "j6", "j6"), Fraction(14, 9), None),
        (("j2", "j2", "j2", "j5", "j5"), Fraction(22, 27), None),
        (("j3", "j3", "j5", "j5"), Fraction(5, 27), None),
        (("j2", "j3", "j5", "j6"), Fraction(-14, 9), None),
    ),
    "I12": (
        (("j2",) * 3 + ("j6",) * 3, Fraction(4400, 243), None),
        (("j3", "j3") + ("j6",) * 3, Fraction(-11, 243), None),
        (("j2", "j2", "j3", "j5", "j6", "j6"), Fraction(-242, 9), None),
        (("j2",) * 4 + ("j5", "j5", "j6"), Fraction(2479, 81), None),
        (("j2", "j3", "j3", "j5", "j5", "j6"), Fraction(692, 81), None),
        (("j2",) * 3 + ("j3", "j5", "j5", "j5"), Fraction(-7156, 243), Fraction(7156, 243)),
        (("j3", "j3", "j3", "j5", "j5", "j5"), Fraction(-92, 243), None),
    ),
    "I18": (
        (("j2",) * 6 + ("j5",) * 3 + ("j9",), Fraction(-625, 729), None),
        (("j2",) * 3 + ("j3", "j3") + ("j5",) * 3 + ("j9",), Fraction(-512, 729), None),
        (("j2",) * 3 + ("j3",) + ("j6",) * 3 + ("j9",), Fraction(-4, 729), None),
        (("j3",) * 3 + ("j6",) * 3 + ("j9",), Fraction(1, 729), None),
        (("j2",) * 4 + ("j3", "j5", "j5", "j6", "j9"), Fraction(1, 3), None),
        (("j2",) * 5 + ("j5", "j6", "j6", "j9"), Fraction(4, 243), None),
        (("j2", "j2", "j3", "j3", "j5", "j6", "j6", "j9"), Fraction(-1, 243), None),
    ),
}

# diagonal-substitution scaling: I(f(d*x, z)) = d^e * I(f)
GL2_EXPONENTS = {
    "I4": 10, "I8": 20, "I12": 30, "I18": 45, "Delta": 20, "H": 30,
    "j2": 4, "j3": 6, "j5": 4, "j6": 6, "j9": 9,
}


@dataclass
class CheckResult:
    name: str
    ok: bool
    detail: str = ""


def _embed_quintic_in_fourone() -> dict[str, MultiPoly]:
    """a_i as bilinear polynomials in b, c: the coefficients of q*ell."""
    b = [MultiPoly.var(FOURONE_VARS, f"b{i}") for i in range(5)]
    c = [MultiPoly.var(FOURONE_VARS, f"c{i}") for i in range(2)]
    fql = BinaryForm(tuple(b)) * BinaryForm(tuple(c))
    return {f"a{i}": fql.coeffs[i] for i in range(6)}


def check_cache_roundtrip(regen: bool = False) -> list[CheckResult]:
    out = []
    fresh_q = _system_from_raw(
        QUINTIC_VARS, QUINTIC_LABELS, QUINTIC_DEGREES, _compute_quintic_raw()
    )
    fresh_f = _system_from_raw(
        FOURONE_VARS, FOURONE_LABELS, FOURONE_DEGREES, _compute_fourone_raw()
    )
    if regen:
        universal_quintic_invariants(refresh=True)
        universal_fourone_invariants(refresh=True)
    loaded_q = universal_quintic_invariants()
    loaded_f = universal_fourone_invariants()
    for name, fresh, loaded in (("quintic", fresh_q, loaded_q), ("fourone", fresh_f, loaded_f)):
        same = fresh.primitive == loaded.primitive and fresh.content == loaded.content
        out.append(
            CheckResult(
                f"cache-{name}",
                same,
                "recomputation matches the cached expansions"
                if same
                else "cached expansions differ from a fresh computation",
            )
        )
        text = serialize_system(name, loaded)
        back = deserialize_system(name, text, loaded.labels, loaded.degrees)
        out.append(
            CheckResult(
                f"cache-{name}-serialization",
                back.primitive == loaded.primitive and back.content == loaded.content,
                "text round-trip with checksum",
            )
        )
    return out


def check_delta_identity() -> list[CheckResult]:
    raw = _compute_quintic_raw()
    combo = (raw["I4"] * raw["I4"]).scale(DELTA_C0) + raw["I8"].scale(DELTA_C1)
    classical = classical_discriminant_poly(5)
    ok = (combo - classical).is_zero
    res = [
        CheckResult(
            "delta-displayed-constants",
            ok,
            "c0*I4^2 + c1*I8 equals Res(f, df/dx)/a0 exactly"
            if ok
            else "the displayed discriminant constants do not reproduce the resultant",
        )
    ]
    prim = universal_discriminant(5)
    ratio = None
    if not combo.is_zero:
        e, c = combo.leading()
        ep, cp = prim.leading()
        if e == ep:
            r = Fraction(c) / Fraction(cp)
            if (combo - prim.scale(r)).is_zero:
                ratio = r
    res.append(
        CheckResult(
            "delta-vs-primitive-resultant",
            ratio == 1,
            f"raw combination = {ratio} * primitive resultant discriminant",
        )
    )
    return res


def check_h_cubic() -> CheckResult:
    raw = _compute_quintic_raw()
    two = ("a4", "a5")
    vals = {
        "a0": MultiPoly.zero(two),
        "a1": MultiPoly.zero(two),
        "a2": MultiPoly.const(two, 1),
        "a3": MultiPoly.zero(two),
        "a4": MultiPoly.var(two, "a4"),
        "a5": MultiPoly.var(two, "a5"),
    }
    h_spec = raw["H"].subs(vals)
    cubic_disc = universal_discriminant(3).subs(
        {
            "a0": MultiPoly.const(two, 1),
            "a1": MultiPoly.zero(two),
            "a2": MultiPoly.var(two, "a4"),
            "a3": MultiPoly.var(two, "a5"),
        }
    )
    ok = (h_spec - cubic_disc).is_zero
    return CheckResult(
        "h-cubic-specialization",
        ok,
        f"raw H(0,0,1,0,a4,a5) = {h_spec} = primitive cubic discriminant"
        if ok
        else f"raw H specializes to {h_spec}, cubic discriminant is {cubic_disc}",
    )


def check_identity_table() -> list[CheckResult]:
    qs = universal_quintic_invariants()
    fs = universal_fourone_invariants()
    embed = _embed_quintic_in_fourone()
    out = []
    display_fails = []
    for label, rows in IDENTITY_TABLE.items():
        lhs = qs.primitive[label].subs(embed)
        acc = None
        displayed_ok = True
        for monos, measured, displayed in rows:
            prod = None
            for j in monos:
                prod = fs.primitive[j] if prod is None else prod * fs.primitive[j]
            term = prod.scale(measured)
            acc = term if acc is None else acc + term
            if displayed is not None:
                displayed_ok = False
        ok = (lhs - acc).is_zero
        note = "measured coefficients verify exactly"
        if not displayed_ok:
            note += "; a displayed coefficient differs and is recorded"
            display_fails.append(label)
        out.append(CheckResult(f"identity-{label}", ok, note))
    out.append(
        CheckResult(
            "identity-displayed-rows",
            set(display_fails) == {"I4", "I12"},
            f"rows with a published/measured coefficient difference: {sorted(display_fails)}",
        )
    )
    return out


def _random_form(rng, degree):
    return BinaryForm(
        tuple(Fraction(rng.randint(-6, 6)) for _ in range(degree + 1))
    )


def _random_unimodular(rng) -> Mobius:
    sigma = Mobius(Fraction(1), Fraction(0), Fraction(0), Fraction(1))
    for _ in range(3):
        b = Fraction(rng.randint(-4, 4))
        c = Fraction(rng.randint(-4, 4))
        sigma = sigma.compose(Mobius(Fraction(1), b, Fraction(0), Fraction(1)))
        sigma = sigma.compose(Mobius(Fraction(1), Fraction(0), c, Fraction(1)))
    return sigma


def check_equivariance(n_moves: int = 20, seed: int = 20240817) -> CheckResult:
    rng = random.Random(seed)
    for _ in range(n_moves):
        sigma = _random_unimodular(rng)
        m = rng.randint(1, 6)
        n = rng.randint(1, 6)
        r = rng.randint(0, min(m, n))
        g = _random_form(rng, m)
        h = _random_form(rng, n)
        lhs = transvectant(act(g, sigma), act(h, sigma), r)
        rhs = transvectant(g, h, r)
        rhs = act(rhs, sigma) if rhs.degree > 0 else rhs
        if lhs != rhs:
            return CheckResult(
                "transvectant-equivariance",
                False,
                f"failed for degrees ({m},{n}), order {r}, sigma {sigma}",
            )
    return CheckResult(
        "transvectant-equivariance",
        True,
        f"{n_moves} random unimodular substitutions on forms of degree <= 6",
    )


def check_dual_path(n_samples: int = 50, seed: int = 20240818) -> CheckResult:
    rng = random.Random(seed)
    for i in range(n_samples):
        coeffs = []
        for _ in range(6):
            c = rng.randint(-5, 5)
            k = rng.randint(0, 3)
            coeffs.append(RatFunc(UniPoly([0] * k + [c])))
        f = BinaryForm(tuple(coeffs))
        uni = evaluate_quintic(f, method="universal")
        direct = evaluate_quintic(f, method="direct")
        if any(uni[lb] != direct[lb] for lb in uni.labels):
            return CheckResult("dual-path", False, f"paths disagree on sample {i}")
    return CheckResult(
        "dual-path", True, f"universal and direct evaluation agree on {n_samples} quintics"
    )


def check_gl2_exponents(seed: int = 20240819) -> CheckResult:
    rng = random.Random(seed)
    d = Fraction(7)
    sigma = Mobius(d, Fraction(0), Fraction(0), Fraction(1))
    from .forms import FourOneForm
    from .invariants import evaluate_fourone

    measured = {}
    while True:
        f0 = BinaryForm(tuple(Fraction(rng.randint(1, 9)) for _ in range(6)))
        base = evaluate_quintic(f0)
        moved = evaluate_quintic(act(f0, sigma))
        got = {
            lb: _log_ratio(moved[lb].as_fraction(), base[lb].as_fraction(), d)
            for lb in QUINTIC_LABELS
        }
        if all(e is not None for e in got.values()):
            measured.update(got)
            break
    while True:
        q0 = BinaryForm(tuple(Fraction(rng.randint(1, 9)) for _ in range(5)))
        l0 = BinaryForm((Fraction(1), Fraction(rng.randint(1, 9))))
        j0 = evaluate_fourone(FourOneForm(q0, l0), check_separable=False)
        j1 = evaluate_fourone(
            FourOneForm(act(q0, sigma), act(l0, sigma)), check_separable=False
        )
        got = {
            lb: _log_ratio(j1[lb].as_fraction(), j0[lb].as_fraction(), d)
            for lb in FOURONE_LABELS
        }
        if all(e is not None for e in got.values()):
            measured.update(got)
            break
    ok = measured == GL2_EXPONENTS
    return CheckResult(
        "diagonal-scaling-exponents",
        ok,
        f"measured {measured}" + ("" if ok else f", expected {GL2_EXPONENTS}"),
    )


def _log_ratio(num: Fraction, den: Fraction, base: Fraction) -> int | None:
    if den == 0 or num == 0 or (num < 0) != (den < 0):
        return None
    ratio = num / den
    e = 0
    while ratio > 1:
        ratio /= base
        e += 1
    while ratio < 1:
        ratio *= base
        e -= 1
    return e if ratio == 1 else None


def check_quadric_constant() -> CheckResult:
    names = ("a0", "a1", "a2")
    a = [MultiPoly.var(names, n) for n in names]
    fq = BinaryForm(tuple(a))
    t2 = transvectant_scalar(fq, fq, 2)
    prim = universal_discriminant(2)
    e, c = t2.leading()
    ep, cp = prim.leading()
    ratio = Fraction(c) / Fraction(cp) if e == ep else None
    ok = ratio is not None and (t2 - prim.scale(ratio)).is_zero
    return CheckResult(
        "quadric-transvectant-discriminant",
        ok and ratio == 2,
        f"<f,f>_2 = {ratio} * primitive quadric discriminant",
    )


PROVENANCE_SCHEMA = "picardtrop-provenance/1"


def provenance_payload() -> dict:
    """Every measured constant the package relies on, as one JSON document."""
    qs = universal_quintic_invariants()
    fs = universal_fourone_invariants()
    identities = {}
    for label, rows in IDENTITY_TABLE.items():
        identities[label] = [
            {
                "monomial": "*".join(monos),
                "measured": str(measured),
                "displayed": str(displayed if displayed is not None else measured),
                "display_matches": displayed is None,
            }
            for monos, measured, displayed in rows
        ]
    return {
        "schema": PROVENANCE_SCHEMA,
        "quintic_contents": {lb: str(qs.content[lb]) for lb in QUINTIC_LABELS},
        "fourone_contents": {lb: str(fs.content[lb]) for lb in FOURONE_LABELS},
        "identities": identities,
        "h_cubic_specialization": "4*a4^3 + 27*a5^2",
        "delta_vs_primitive_resultant": "1",
        "quadric_transvectant_vs_disc": "2",
        "diagonal_scaling_exponents": GL2_EXPONENTS,
    }


def write_provenance() -> None:
    from .invariants import cache_dir

    path = cache_dir() / "provenance.json"
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text(json.dumps(provenance_payload(), indent=2, sort_keys=True) + "\n")


def check_provenance() -> CheckResult:
    from .invariants import cache_dir

    path = cache_dir() / "provenance.json"
    if not path.exists():
        return CheckResult("provenance", False, f"{path} is missing; run selftest --regen")
    try:
        stored = json.loads(path.read_text())
    except json.JSONDecodeError:
        return CheckResult("provenance", False, f"{path} is not valid JSON")
    ok = stored == provenance_payload()
    return CheckResult(
        "provenance",
        ok,
        "recorded constants are stable" if ok else "recorded constants drifted",
    )


def run_selftest(regen: bool = False) -> list[CheckResult]:
    checks: list[CheckResult] = []
    checks.extend(check_cache_roundtrip(regen=regen))
    if regen:
        write_provenance()
    checks.extend(check_delta_identity())
    checks.append(check_h_cubic())
    checks.extend(check_identity_table())
    checks.append(check_quadric_constant())
    checks.append(check_equivariance())
    checks.append(check_dual_path())
    checks.append(check_gl2_exponents())
    checks.append(check_provenance())
    return checks


def format_checks(checks: list[CheckResult]) -> str:
    lines = []
    for c in checks:
        status = "ok " if c.ok else "FAIL"
        lines.append(f"[{status}] {c.name}: {c.detail}")
    good = sum(1 for c in checks if c.ok)
    lines.append(f"{good}/{len(checks)} checks passed")
    return "\n".join(lines) + "\n"
