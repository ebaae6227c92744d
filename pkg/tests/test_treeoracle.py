import random
from fractions import Fraction

import pytest

from picardtrop.errors import InternalConsistencyError
from picardtrop.ratfunc import ONE, ZERO, RatFunc, T
from picardtrop.treeoracle import (
    FAMILIES,
    INFINITY,
    FamilySample,
    MetricTree5,
    RootConfig,
    expected_tree,
    mobius_point,
    random_family_sample,
    sample_family,
    tree_from_roots,
)

F = Fraction


def _const(x):
    return RatFunc.from_const(x)


def test_star_trivial():
    rc = RootConfig((_const(0), _const(1), INFINITY, _const(2), _const(3)), marked=2)
    tree = tree_from_roots(rc)
    assert tree.topology == "star"
    assert tree.splits == ()
    assert tree.marked_kind() == "I"


def test_paper_one_split():
    # {0, 1, oo, t, 2t}: split {0, t, 2t | 1, oo} of length v(t) = 1
    rc = RootConfig((_const(0), _const(1), INFINITY, T, 2 * T), marked=2)
    tree = tree_from_roots(rc)
    assert tree.topology == "one-split"
    ((side, length),) = tree.splits
    assert side == frozenset({1, 2}) and length == 1
    assert tree.marked_kind() == "II.1"


def test_derived_caterpillar():
    # {0, 1, oo, t, 1+t^2}: splits {0,t} and {1, 1+t^2}, lengths (1, 2)
    rc = RootConfig((_const(0), _const(1), INFINITY, T, 1 + T**2), marked=2)
    tree = tree_from_roots(rc)
    assert tree.topology == "caterpillar"
    assert dict(tree.splits) == {
        frozenset({0, 3}): F(1),
        frozenset({1, 4}): F(2),
    }
    assert tree.marked_kind() == "III.2"
    assert tree.lengths_sorted() == (F(1), F(2))


def test_all_finite_roots_need_no_move():
    rc = RootConfig((_const(0), _const(1), _const(2), T, 2 * T))
    tree = tree_from_roots(rc)
    assert tree.topology == "one-split"
    ((side, length),) = tree.splits
    assert side == frozenset({1, 2}) and length == 1


def test_mobius_invariance():
    rng = random.Random(71)
    configs = []
    for fam in FAMILIES:
        for _ in range(4):
            _qf, rc = sample_family(random_family_sample(fam, rng))
            configs.append(rc)
    moves = [(0, 1, 1, -c) for c in (2, 3, 5, 7)] + [(1, 3, 2, 5)]
    for rc in configs:
        base = tree_from_roots(rc)
        for mv in moves:
            # skip moves that send a root back to infinity
            if any(mobius_point(mv, p) is INFINITY for p in rc.roots):
                continue
            assert tree_from_roots(rc, move=mv) == base


def test_family_self_consistency():
    rng = random.Random(72)
    for fam in FAMILIES:
        for i in range(15):
            force_tie = fam.startswith("III") and i % 4 == 0
            fs = random_family_sample(fam, rng, force_tie=force_tie)
            _qf, rc = sample_family(fs)
            assert tree_from_roots(rc) == expected_tree(fs), fs


def test_permuting_unmarked_roots_preserves_marked_tree():
    rng = random.Random(73)
    fs = FamilySample("III.1", 1, 2, F(1), F(2))
    _qf, rc = sample_family(fs)
    base = tree_from_roots(rc)
    for _ in range(6):
        perm = list(range(4))
        rng.shuffle(perm)
        roots = tuple(rc.roots[i] for i in perm) + (rc.roots[4],)
        tree = tree_from_roots(RootConfig(roots, marked=4))
        assert tree.marked_kind() == base.marked_kind()
        assert tree.lengths_sorted() == base.lengths_sorted()
        assert tree.marked_split_length() == base.marked_split_length()


def test_permuting_all_roots_preserves_unmarked_tree():
    rng = random.Random(74)
    fs = FamilySample("III.2", 2, 3, F(1), F(2))
    _qf, rc = sample_family(fs)
    base = tree_from_roots(rc)
    for _ in range(6):
        perm = list(range(5))
        rng.shuffle(perm)
        roots = tuple(rc.roots[i] for i in perm)
        tree = tree_from_roots(RootConfig(roots))
        assert tree.topology == base.topology
        assert tree.lengths_sorted() == base.lengths_sorted()


def test_uniformizer_substitution_scales_lengths():
    # replacing t by t^2 doubles every length; rescaling by 1/2 recovers the
    # original tree, which is how rational edge lengths enter
    fs = FamilySample("III.2", 1, 2, F(1), F(1))
    lam1 = T**2  # t1 = t with t -> t^2
    lam2 = 1 + T**4
    rc = RootConfig((ZERO, ONE, lam1, lam2, INFINITY), marked=4)
    tree = tree_from_roots(rc)
    base = tree_from_roots(sample_family(fs)[1])
    assert tree.lengths_sorted() == tuple(2 * x for x in base.lengths_sorted())
    assert tuple(x / 2 for x in tree.lengths_sorted()) == base.lengths_sorted()


def test_sample_family_examples():
    qf, rc = sample_family(FamilySample("II.2", 1, 1, F(1), F(2)))
    assert rc.roots[2] == T and rc.roots[3] == _const(2)
    qf, rc = sample_family(FamilySample("III.1", 1, 1, F(1), F(1)))
    assert rc.roots[2] == T and rc.roots[3] == T**2
    _qf, rc = sample_family(FamilySample("I", 1, 1, F(2), F(3)))
    assert tree_from_roots(rc).topology == "star"
    # the marked point is the root of ell at infinity
    assert rc.marked == 4 and rc.roots[4] is INFINITY
    assert qf.ell.coeffs[0].is_zero


def test_expected_tree_examples():
    assert expected_tree(FamilySample("II.1", 3, 1, F(1), F(2))) == MetricTree5(
        "one-split", ((frozenset({1, 4}), F(3)),), 4
    )
    t = expected_tree(FamilySample("III.2", 2, 5, F(1), F(1)))
    assert t.lengths_sorted() == (F(2), F(5))
    assert expected_tree(FamilySample("I", 1, 1, F(2), F(3))).topology == "star"


def test_family_sample_validation():
    with pytest.raises(ValueError):
        FamilySample("I", 1, 1, F(1), F(2))  # mu1 = 1 forbidden
    with pytest.raises(ValueError):
        FamilySample("II.1", 1, 1, F(2), F(2))  # equal residues
    with pytest.raises(ValueError):
        FamilySample("II.2", 1, 1, F(2), F(1))  # mu2 = 1 forbidden
    with pytest.raises(ValueError):
        FamilySample("III.2", 3, 2, F(1), F(1))  # needs k1 <= k2
    with pytest.raises(ValueError):
        FamilySample("II.1", 0, 1, F(1), F(2))  # k1 >= 1
    with pytest.raises(ValueError):
        FamilySample("X", 1, 1, F(1), F(2))


def test_root_config_validation():
    with pytest.raises(ValueError):
        RootConfig((_const(0), _const(0), _const(1), _const(2), INFINITY))
    with pytest.raises(ValueError):
        RootConfig((INFINITY, INFINITY, _const(1), _const(2), _const(3)))
    with pytest.raises(ValueError):
        RootConfig((_const(0), _const(1), _const(2), _const(3)))


def test_bad_move_rejected():
    rc = RootConfig((_const(0), _const(1), _const(2), T, 2 * T))
    with pytest.raises(ValueError):
        tree_from_roots(rc, move=(0, 1, 1, -1))  # sends the root 1 to infinity
