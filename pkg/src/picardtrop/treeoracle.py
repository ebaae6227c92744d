"""Ground truth: the marked metric tree computed directly from the five roots.

Nothing here looks at invariants.  The dissimilarity D(i,j) = -v(p_i - p_j)
of the (finite) roots behaves like a tree metric up to a potential at each
leaf, so for every four roots the three pairing sums of D have their two
largest values equal, the minimal pairing names the induced split, and the
gap max - min is the length of the separating path.  (The gap is the full
length, not half of it: D differs from a path metric by one potential per
leaf, and each pairing sum contains every leaf exactly once, which cancels
the potentials but removes the factor two of the classical four-point rule.
The worked families below pin this down, e.g. roots {0, 1, oo, t, 2t} give
a single internal edge of length exactly v(t).)

A Moebius move with constant rational entries makes all five roots finite
first; the output is invariant under the choice of move, and the test suite
exercises that invariance explicitly.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from typing import Optional

from .errors import InternalConsistencyError
from .forms import BinaryForm, FourOneForm, form_from_roots
from .ratfunc import ONE, ZERO, RatFunc, T


class _Infinity:
    """The point at infinity on the projective line."""

    __slots__ = ()

    def __repr__(self):
        return "INFINITY"

    def __str__(self):
        return "inf"


INFINITY = _Infinity()


@dataclass(frozen=True)
class RootConfig:
    """Five pairwise distinct points of P^1(Q(t)), at most one at infinity."""

    roots: tuple
    marked: Optional[int] = None

    def __post_init__(self):
        if len(self.roots) != 5:
            raise ValueError("a root configuration needs exactly 5 points")
        ninf = sum(1 for r in self.roots if r is INFINITY)
        if ninf > 1:
            raise ValueError("at most one root may be at infinity")
        for i, j in combinations(range(5), 2):
            a, b = self.roots[i], self.roots[j]
            if a is INFINITY or b is INFINITY:
                continue
            if a == b:
                raise ValueError(f"roots {i} and {j} coincide")
        if self.marked is not None and not 0 <= self.marked < 5:
            raise ValueError("marked index out of range")


@dataclass(frozen=True)
class MetricTree5:
    """Phylogenetic tree on the 5 labelled roots: its splits and lengths.

    splits holds the nontrivial bipartitions as (2-element frozenset of leaf
    indices, positive length), sorted by leaf set.  Topology is redundant
    with len(splits) but spelled out for readability.
    """

    topology: str  # "star" | "one-split" | "caterpillar"
    splits: tuple[tuple[frozenset, Fraction], ...]
    marked: Optional[int] = None

    def lengths_sorted(self) -> tuple[Fraction, ...]:
        return tuple(sorted(ln for _s, ln in self.splits))

    def marked_split_length(self) -> Optional[Fraction]:
        """Length of the split whose pair side contains the marked leaf."""
        if self.marked is None:
            return None
        for s, ln in self.splits:
            if self.marked in s:
                return ln
        return None

    def unmarked_kind(self) -> str:
        return {"star": "I", "one-split": "II", "caterpillar": "III"}[self.topology]

    def marked_kind(self) -> str:
        """Marked tree type read off the topology and the marked leaf position."""
        if self.marked is None:
            raise ValueError("no marked leaf")
        kind = self.unmarked_kind()
        if kind == "I":
            return "I"
        in_pair = any(self.marked in s for s, _ln in self.splits)
        return f"{kind}.1" if in_pair else f"{kind}.2"


# ---------------------------------------------------------------------------
# Moebius moves on points
# ---------------------------------------------------------------------------


def mobius_point(abcd, p):
    """Apply (a p + b)/(c p + d) projectively; entries are exact constants."""
    a, b, c, d = (RatFunc.from_const(x) if not isinstance(x, RatFunc) else x for x in abcd)
    if p is INFINITY:
        if not c:
            return INFINITY
        return a / c
    den = c * p + d
    if not den:
        return INFINITY
    return (a * p + b) / den


def move_roots(rc: RootConfig, abcd) -> RootConfig:
    return RootConfig(tuple(mobius_point(abcd, p) for p in rc.roots), rc.marked)


def default_finite_move(rc: RootConfig):
    """x -> 1/(x - c) for the smallest integer c >= 0 distinct from every root."""
    c = 0
    while any(
        r is not INFINITY and r == RatFunc.from_const(c) for r in rc.roots
    ):
        c += 1
    return (0, 1, 1, -c)


# ---------------------------------------------------------------------------
# Four-point reconstruction
# ---------------------------------------------------------------------------

_PAIRINGS = (
    ((0, 1), (2, 3)),
    ((0, 2), (1, 3)),
    ((0, 3), (1, 2)),
)


def tree_from_roots(rc: RootConfig, move=None) -> MetricTree5:
    """Reconstruct the marked metric tree of five roots.

    Any violation of the four-point condition or an incompatible split set
    signals an arithmetic bug and raises InternalConsistencyError; valid
    input cannot produce it.
    """
    if move is None:
        if any(r is INFINITY for r in rc.roots):
            move = default_finite_move(rc)
    if move is not None:
        rc_f = move_roots(rc, move)
        if any(r is INFINITY for r in rc_f.roots):
            raise ValueError("the chosen Moebius move does not make all roots finite")
    else:
        rc_f = rc
    pts = rc_f.roots

    dis = {}
    for i, j in combinations(range(5), 2):
        diff = pts[i] - pts[j]
        dis[(i, j)] = dis[(j, i)] = -diff.val_t().value

    quartets = {}
    for quad in combinations(range(5), 4):
        sums = []
        for pair_a, pair_b in _PAIRINGS:
            (i, j) = (quad[pair_a[0]], quad[pair_a[1]])
            (k, l) = (quad[pair_b[0]], quad[pair_b[1]])
            sums.append((dis[(i, j)] + dis[(k, l)], (frozenset((i, j)), frozenset((k, l)))))
        sums.sort(key=lambda x: x[0])
        low, mid, high = sums
        if low[0] == high[0]:
            quartets[quad] = None  # star quartet
            continue
        if mid[0] != high[0]:
            raise InternalConsistencyError(
                f"four-point condition violated on roots {quad}: sums "
                f"{[s for s, _p in sums]}"
            )
        quartets[quad] = (low[1], high[0] - low[0])

    edges = []
    leaves = frozenset(range(5))
    for pair in combinations(range(5), 2):
        side = frozenset(pair)
        rest = sorted(leaves - side)
        lengths = []
        ok = True
        for other in combinations(rest, 2):
            quad = tuple(sorted(side | set(other)))
            got = quartets[quad]
            if got is None or side not in got[0]:
                ok = False
                break
            lengths.append(got[1])
        if ok:
            edges.append((side, min(lengths)))

    _validate_against_quartets(edges, quartets)

    if len(edges) == 0:
        topology = "star"
    elif len(edges) == 1:
        topology = "one-split"
    elif len(edges) == 2:
        if edges[0][0] & edges[1][0]:
            raise InternalConsistencyError(f"incompatible splits {edges}")
        topology = "caterpillar"
    else:
        raise InternalConsistencyError(f"{len(edges)} splits on 5 leaves: {edges}")
    splits = tuple(sorted(edges, key=lambda e: sorted(e[0])))
    return MetricTree5(topology, splits, rc.marked)


def _validate_against_quartets(edges, quartets) -> None:
    """Every measured quartet must be reproduced by the assembled edge set."""
    for quad, got in quartets.items():
        qset = set(quad)
        straddle = [(s, ln) for s, ln in edges if s <= qset]
        if not straddle:
            expected = None
        elif len(straddle) == 1:
            s, ln = straddle[0]
            expected = (frozenset((s, frozenset(qset - s))), ln)
        else:
            (s1, l1), (s2, l2) = straddle
            expected = (frozenset((s1, s2)), l1 + l2)
        if got is None:
            if expected is not None:
                raise InternalConsistencyError(
                    f"quartet {quad} is a star but the tree implies {expected}"
                )
            continue
        gsplit, glen = got
        if expected is None or frozenset(gsplit) != expected[0] or glen != expected[1]:
            raise InternalConsistencyError(
                f"quartet {quad} measured {got}, tree implies {expected}"
            )


# ---------------------------------------------------------------------------
# Universal families
# ---------------------------------------------------------------------------

FAMILIES = ("I", "II.1", "II.2", "III.1", "III.2")


@dataclass(frozen=True)
class FamilySample:
    """A point of one universal family: t-exponents and residue parameters.

    The residues mu live in Q (the residue field of Q(t)); the conditions
    per family keep the sample inside the open stratum, so the nominal tree
    type is guaranteed.
    """

    family: str
    k1: int = 1
    k2: int = 1
    mu1: Fraction = Fraction(1)
    mu2: Fraction = Fraction(1)

    def __post_init__(self):
        object.__setattr__(self, "mu1", Fraction(self.mu1))
        object.__setattr__(self, "mu2", Fraction(self.mu2))
        f = self.family
        if f not in FAMILIES:
            raise ValueError(f"unknown family {f!r}")
        if f != "I" and self.k1 < 1:
            raise ValueError("k1 must be >= 1")
        if f in ("III.1", "III.2") and self.k2 < 1:
            raise ValueError("k2 must be >= 1")
        mu1, mu2 = self.mu1, self.mu2
        if f == "I":
            if mu1 in (0, 1) or mu2 in (0, 1) or mu1 == mu2:
                raise ValueError("family I needs mu_i not in {0,1} and mu1 != mu2")
        elif f == "II.1":
            if mu1 == 0 or mu2 == 0 or mu1 == mu2:
                raise ValueError("family II.1 needs nonzero distinct residues")
        elif f == "II.2":
            if mu1 == 0 or mu2 in (0, 1):
                raise ValueError("family II.2 needs mu1 != 0 and mu2 not in {0,1}")
        elif f in ("III.1", "III.2"):
            if mu1 == 0 or mu2 == 0:
                raise ValueError(f"family {f} needs nonzero residues")
            if f == "III.2" and self.k1 > self.k2:
                raise ValueError("family III.2 needs k1 <= k2")

    def lambdas(self) -> tuple[RatFunc, RatFunc]:
        t1 = T**self.k1
        if self.family == "I":
            return RatFunc.from_const(self.mu1), RatFunc.from_const(self.mu2)
        if self.family == "II.1":
            return t1 * self.mu1, t1 * self.mu2
        if self.family == "II.2":
            return t1 * self.mu1, RatFunc.from_const(self.mu2)
        t2 = T**self.k2
        if self.family == "III.1":
            return t1 * self.mu1, t1 * t2 * self.mu2
        return t1 * self.mu1, 1 + t2 * self.mu2  # III.2


def sample_family(fs: FamilySample) -> tuple[FourOneForm, RootConfig]:
    """Build the (4,1)-form and root configuration of one family point.

    The quartic has roots {0, 1, lambda1, lambda2}, the linear form is z
    (root at infinity, the marked point)."""
    lam1, lam2 = fs.lambdas()
    q = form_from_roots([ZERO, ONE, lam1, lam2], lead=ONE)
    ell = BinaryForm((ZERO, ONE))
    rc = RootConfig((ZERO, ONE, lam1, lam2, INFINITY), marked=4)
    return FourOneForm(q, ell), rc


def expected_tree(fs: FamilySample) -> MetricTree5:
    """The family's nominal tree, lengths read straight from the exponents."""
    k1 = Fraction(fs.k1)
    k2 = Fraction(fs.k2)
    f = fs.family
    if f == "I":
        return MetricTree5("star", (), 4)
    if f == "II.1":
        return MetricTree5("one-split", ((frozenset((1, 4)), k1),), 4)
    if f == "II.2":
        return MetricTree5("one-split", ((frozenset((0, 2)), k1),), 4)
    if f == "III.1":
        splits = [(frozenset((0, 3)), k2), (frozenset((1, 4)), k1)]
    else:  # III.2
        splits = [(frozenset((0, 2)), k1), (frozenset((1, 3)), k2)]
    splits = tuple(sorted(splits, key=lambda e: sorted(e[0])))
    return MetricTree5("caterpillar", splits, 4)


# ---------------------------------------------------------------------------
# Random sampling
# ---------------------------------------------------------------------------

_MU_POOL = [k for k in range(-9, 10) if k != 0]

# ratios making the I18 reduction of the 3-cluster family vanish, so the
# one-edge length max must fall back to its discriminant branch
_DEGENERATE_MU_PAIRS = ((2, 1), (1, -1), (1, 2))


def random_family_sample(family: str, rng, force_tie=False, stress=False) -> FamilySample:
    """Draw a sample subject to the family's residue conditions.

    force_tie makes the two exponents equal (two-edge families only), and
    stress picks residue pairs on the degenerate locus of the one-edge
    length formula's transvectant branch.
    """
    while True:
        k1 = rng.randint(1, 12)
        k2 = rng.randint(1, 12)
        if force_tie:
            k2 = k1
        if family == "III.2" and k1 > k2:
            k1, k2 = k2, k1
        mu1 = Fraction(rng.choice(_MU_POOL))
        mu2 = Fraction(rng.choice(_MU_POOL))
        if stress and family in ("II.1", "II.2"):
            a, b = _DEGENERATE_MU_PAIRS[rng.randrange(len(_DEGENERATE_MU_PAIRS))]
            scale = rng.choice((1, 2, 3))
            mu1, mu2 = Fraction(a * scale), Fraction(b * scale)
        try:
            return FamilySample(family, k1, k2, mu1, mu2)
        except ValueError:
            continue
