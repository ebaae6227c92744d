"""Acceptance criteria, one test per criterion, exact arithmetic throughout.

Each test prints one PASS line on success; failures surface as ordinary
assertion errors.  The two published coefficients that the computed system
contradicts are pinned by a strict expected-failure test (criterion 3); the
measured replacements are verified exactly and recorded in the provenance
file.  See the repository README for the arbitration notes.
"""

import random
import time
from fractions import Fraction

import pytest
from conftest import (
    PAPER_F2,
    PAPER_F3,
    classifier_input_for,
    quintic_from_lambdas,
)

from picardtrop.classify import (
    ClassifierInput,
    edge_lengths,
    marked_tree_type,
    picard_skeleton,
    tree_type,
)
from picardtrop.forms import BinaryForm, FourOneForm, Mobius, act
from picardtrop.invariants import (
    TAdicBackend,
    evaluate_fourone,
    evaluate_quintic,
    tropicalize,
    universal_fourone_invariants,
    universal_quintic_invariants,
)
from picardtrop.multipoly import MultiPoly
from picardtrop.ratfunc import RatFunc, T
from picardtrop.selftest import (
    IDENTITY_TABLE,
    _embed_quintic_in_fourone,
    check_delta_identity,
    check_equivariance,
    check_h_cubic,
    check_identity_table,
    run_selftest,
)
from picardtrop.treeoracle import (
    FAMILIES,
    FamilySample,
    random_family_sample,
    sample_family,
    tree_from_roots,
)
from picardtrop.valuation import Val
from picardtrop.verify import run_verify

F = Fraction
BACKEND = TAdicBackend()


def _passline(n, text):
    print(f"ACCEPTANCE {n} PASS: {text}")


@pytest.fixture(scope="module")
def verify_run():
    t0 = time.perf_counter()
    summary = run_verify(FAMILIES, samples=250, seed=1)
    return summary, time.perf_counter() - t0


def test_acceptance_1_paper_examples():
    universal_quintic_invariants()  # warm the cache before timing
    for name, f, expected_type in (("f2", PAPER_F2, "II"), ("f3", PAPER_F3, "III")):
        t0 = time.perf_counter()
        inv = evaluate_quintic(f)
        vals = tuple(BACKEND.val(inv[lb]) for lb in ("I4", "I8", "I12", "I18", "Delta"))
        cin = ClassifierInput({lb: BACKEND.val(inv[lb]) for lb in inv.labels}, None, 0)
        got = str(tree_type(cin))
        elapsed = time.perf_counter() - t0
        assert vals == (Val(0), Val(0), Val(0), Val(2), Val(4)), name
        assert got == expected_type, name
        assert elapsed < 1.0, f"{name} took {elapsed:.3f}s"
    _passline(1, "f2/f3 give valuations (0,0,0,2,4) and types II/III in < 1s each")


def test_acceptance_2_constants_and_selftest():
    t0 = time.perf_counter()
    checks = run_selftest(regen=True)
    elapsed = time.perf_counter() - t0
    failed = [c.name for c in checks if not c.ok]
    assert not failed, failed
    names = {c.name for c in checks}
    assert "delta-displayed-constants" in names
    assert "h-cubic-specialization" in names
    assert elapsed < 300, f"selftest took {elapsed:.1f}s"
    _passline(
        2,
        f"discriminant constants and H specialization exact; selftest with cache"
        f" regeneration in {elapsed:.1f}s < 5min",
    )


def test_acceptance_3_identity_suite():
    results = check_identity_table()
    failed = [c.name for c in results if not c.ok]
    assert not failed, failed
    _passline(
        3,
        "invariant relations verified exactly in the primitive normalization"
        " (two published coefficients corrected, see provenance)",
    )


@pytest.mark.xfail(
    strict=True,
    reason=(
        "the published j3*j5 coefficient of the degree-4 relation and the"
        " published sign of the j2^3*j3*j5^3 term of the degree-12 relation"
        " do not match the computed system (measured: -1/3 and -7156/243);"
        " every other relation and constant verifies exactly"
    ),
)
def test_acceptance_3_displayed_rows_verbatim():
    qs = universal_quintic_invariants()
    fs = universal_fourone_invariants()
    embed = _embed_quintic_in_fourone()
    for label in ("I4", "I12"):
        lhs = qs.primitive[label].subs(embed)
        acc = None
        for monos, measured, displayed in IDENTITY_TABLE[label]:
            coeff = displayed if displayed is not None else measured
            prod = None
            for j in monos:
                prod = fs.primitive[j] if prod is None else prod * fs.primitive[j]
            term = prod.scale(coeff)
            acc = term if acc is None else acc + term
        assert (lhs - acc).is_zero, label


def test_acceptance_4_equivariance_suite():
    res = check_equivariance(n_moves=20)
    assert res.ok, res.detail
    rng = random.Random(4441)
    quintics = 0
    while quintics < 10:
        f = BinaryForm(
            tuple(
                RatFunc.from_const(rng.randint(-4, 4)) + T * rng.randint(-2, 2)
                for _ in range(6)
            )
        )
        inv = evaluate_quintic(f)
        if not inv.Delta:
            continue
        quintics += 1
        base = tropicalize(inv, BACKEND)
        moves = 0
        while moves < 20:
            sigma = Mobius(
                T ** rng.randint(0, 2) * rng.randint(1, 3),
                RatFunc.from_const(rng.randint(-3, 3)),
                T * rng.randint(-2, 2),
                RatFunc.from_const(rng.randint(1, 3)),
            )
            if not sigma.det():
                continue
            moves += 1
            moved = tropicalize(evaluate_quintic(act(f, sigma)), BACKEND)
            assert moved.same_class(base)
    _passline(4, "transvectant equivariance and tropical-point GL2 invariance hold")


def test_acceptance_5_oracle_equivalence(verify_run):
    summary, elapsed = verify_run
    assert summary.total == 1250
    assert summary.passed == 1250, summary.failures[:3]
    assert elapsed < 600, f"verify took {elapsed:.1f}s"
    # both branches of the one-edge length max were exercised
    assert summary.arm_stats.get("tie", 0) > 0
    assert summary.arm_stats.get("disc-arm", 0) > 0
    _passline(
        5,
        f"classifier matches the root oracle on 1250/1250 family samples"
        f" (seed 1) in {elapsed:.1f}s < 10min",
    )


def test_acceptance_6_exclusivity(verify_run):
    summary, _elapsed = verify_run
    assert summary.exclusive_count == summary.total == 1250
    _passline(6, "exactly one tree-type condition fired on each of 1250 samples")


def test_acceptance_7_edge_length_arbitration(verify_run):
    summary, _elapsed = verify_run
    # 500 two-edge samples (250 per family): the adopted halved formula agreed
    # with the oracle on all (criterion 5); the non-halved displayed variant
    # came out exactly double on every one of them
    assert summary.display_2x_count == 500
    assert summary.display_2x_count >= 50
    _passline(
        7,
        "halved second-length formula matches the oracle on 500 two-edge"
        " samples; the displayed variant is exactly 2x on all of them",
    )


def test_acceptance_8_picard_skeleta():
    expected = {
        "I": ([3], [], 0),
        "II.1": ([0, 1], [(F(2), 3)], 2),
        "II.2": ([2, 1], [(F(2, 3), 1)], 0),
        "III.1": ([0, 0, 1], [(F(2), 3), (F(1), 1)], 2),
        "III.2": ([1, 1, 1], [(F(2, 3), 1), (F(1), 1)], 0),
    }
    samples = {
        "I": FamilySample("I", 1, 1, F(2), F(3)),
        "II.1": FamilySample("II.1", 2, 1, F(1), F(2)),
        "II.2": FamilySample("II.2", 2, 1, F(1), F(3)),
        "III.1": FamilySample("III.1", 2, 3, F(1), F(1)),
        "III.2": FamilySample("III.2", 2, 3, F(1), F(1)),
    }
    rng = random.Random(888)
    for fam, fs in samples.items():
        qf, _rc = sample_family(fs)
        cin = classifier_input_for(qf, BACKEND)
        mt = marked_tree_type(cin)
        assert str(mt) == fam
        skel = picard_skeleton(mt, edge_lengths(cin, mt))
        weights = [g for _v, g in skel.vertices]
        edges = [(ln, m) for _a, _b, ln, m in skel.edges]
        want_w, want_e, want_b1 = expected[fam]
        assert weights == want_w, fam
        assert edges == want_e, fam
        assert skel.first_betti == want_b1, fam
        assert skel.total_genus == 3, fam
    # genus conservation across random samples of every family
    for fam in FAMILIES:
        for _ in range(5):
            qf, _rc = sample_family(random_family_sample(fam, rng))
            cin = classifier_input_for(qf, BACKEND)
            mt = marked_tree_type(cin)
            skel = picard_skeleton(mt, edge_lengths(cin, mt))
            assert skel.total_genus == 3
    _passline(8, "all produced skeleta conserve genus and match the type table")


def test_acceptance_9_oracle_mobius_invariance():
    rng = random.Random(999)
    configs = []
    for fam in FAMILIES:
        for _ in range(4):
            _qf, rc = sample_family(random_family_sample(fam, rng))
            configs.append(rc)
    assert len(configs) == 20
    from picardtrop.treeoracle import INFINITY, mobius_point

    for rc in configs:
        base = tree_from_roots(rc)
        done = 0
        c = 2
        while done < 5:
            move = (0, 1, 1, -c)
            c += 1
            if any(mobius_point(move, p) is INFINITY for p in rc.roots):
                continue
            assert tree_from_roots(rc, move=move) == base
            done += 1
    _passline(9, "oracle output identical under 5 finite-making moves on 20 configs")
