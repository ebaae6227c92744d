"""Input schema, report assembly and output rendering for the CLI.

A FormInput is one of three kinds:

  quintic  - 6 coefficient expressions a0..a5
  fourone  - 5 + 2 coefficient expressions (quartic b0..b4, linear c0, c1)
  roots    - 5 root expressions, "inf" allowed once, optional marked root
             (default: "inf" when present, else the last root listed)

Root inputs build the (4,1)-form the way the universal families do: the
linear form vanishes at the marked root, the quartic is monic in x over the
remaining roots (a root at infinity contributes a factor z).  The backend is
t-adic by default or p-adic(p); p-adic inputs must be plain rationals.

All numbers in reports are exact strings (integers, a/b fractions, or
polynomial expressions in t); valuations print as rationals or "inf".
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Optional

from .classify import (
    ClassifierInput,
    EdgeLengths,
    MarkedTreeType,
    PicardSkeleton,
    edge_lengths,
    marked_tree_type,
    picard_skeleton,
    tree_type,
)
from .errors import NonSeparableError, PicardTropError
from .exprparse import parse_ratfunc
from .forms import BinaryForm, FourOneForm
from .invariants import (
    PAdicBackend,
    TAdicBackend,
    evaluate_fourone,
    evaluate_quintic,
    tropicalize,
)
from .ratfunc import RatFunc
from .treeoracle import INFINITY, MetricTree5, RootConfig, tree_from_roots

REPORT_SCHEMA = "picardtrop-report/1"
INPUT_SCHEMA = "picardtrop-forminput/1"


@dataclass(frozen=True)
class FormInput:
    kind: str  # "quintic" | "fourone" | "roots"
    backend: object
    quintic: Optional[BinaryForm] = None
    fourone: Optional[FourOneForm] = None
    rootconfig: Optional[RootConfig] = None


def _parse_backend(obj) -> object:
    if obj is None:
        return TAdicBackend()
    kind = obj.get("type", "t-adic")
    if kind == "t-adic":
        return TAdicBackend()
    if kind == "p-adic":
        p = obj.get("p")
        if not isinstance(p, int) or p < 2:
            raise PicardTropError("p-adic backend needs an integer prime p >= 2")
        return PAdicBackend(p)
    raise PicardTropError(f"unknown backend type {kind!r}")


def parse_form_input(obj: dict) -> FormInput:
    """Validate and interpret a form-input JSON object."""
    if not isinstance(obj, dict):
        raise PicardTropError("form input must be a JSON object")
    backend = _parse_backend(obj.get("backend"))
    allow_t = backend.residue_char == 0
    kind = obj.get("kind")

    def expr(s):
        if not isinstance(s, str):
            raise PicardTropError(f"expected an expression string, got {s!r}")
        return parse_ratfunc(s, allow_t=allow_t)

    if kind == "quintic":
        coeffs = obj.get("coefficients")
        if not isinstance(coeffs, list) or len(coeffs) != 6:
            raise PicardTropError("a quintic needs exactly 6 coefficient expressions")
        f = BinaryForm(tuple(expr(s) for s in coeffs))
        return FormInput("quintic", backend, quintic=f)

    if kind == "fourone":
        qc = obj.get("q")
        lc = obj.get("ell")
        if not isinstance(qc, list) or len(qc) != 5:
            raise PicardTropError("the quartic part needs exactly 5 coefficients")
        if not isinstance(lc, list) or len(lc) != 2:
            raise PicardTropError("the linear part needs exactly 2 coefficients")
        qf = FourOneForm(
            BinaryForm(tuple(expr(s) for s in qc)),
            BinaryForm(tuple(expr(s) for s in lc)),
        )
        return FormInput("fourone", backend, quintic=qf.quintic, fourone=qf)

    if kind == "roots":
        roots_in = obj.get("roots")
        if not isinstance(roots_in, list) or len(roots_in) != 5:
            raise PicardTropError("a root list needs exactly 5 entries")
        roots = []
        for s in roots_in:
            if isinstance(s, str) and s.strip() == "inf":
                roots.append(INFINITY)
            else:
                roots.append(expr(s))
        marked = obj.get("marked")
        midx = _marked_index(roots, roots_in, marked)
        for i in range(len(roots)):
            for j in range(i + 1, len(roots)):
                a, b = roots[i], roots[j]
                if a is not INFINITY and b is not INFINITY and a == b:
                    raise NonSeparableError(
                        f"roots {roots_in[i]!r} and {roots_in[j]!r} coincide;"
                        " the quintic would not be separable"
                    )
        rc = RootConfig(tuple(roots), marked=midx)
        qf = fourone_from_roots(rc)
        return FormInput("roots", backend, quintic=qf.quintic, fourone=qf, rootconfig=rc)

    raise PicardTropError("kind must be one of 'quintic', 'fourone', 'roots'")


def _marked_index(roots, roots_in, marked) -> int:
    if marked is None:
        for i, r in enumerate(roots):
            if r is INFINITY:
                return i
        return len(roots) - 1
    if isinstance(marked, int):
        if not 0 <= marked < len(roots):
            raise PicardTropError(f"marked index {marked} out of range")
        return marked
    if isinstance(marked, str):
        if marked.strip() == "inf":
            for i, r in enumerate(roots):
                if r is INFINITY:
                    return i
            raise PicardTropError("marked is 'inf' but no root is at infinity")
        for i, s in enumerate(roots_in):
            if isinstance(s, str) and s.strip() == marked.strip():
                return i
        raise PicardTropError(f"marked root {marked!r} does not appear in the list")
    raise PicardTropError("marked must be an index or a root expression string")


def fourone_from_roots(rc: RootConfig) -> FourOneForm:
    """The (4,1)-form with ell vanishing at the marked root, q monic over the rest."""
    midx = rc.marked if rc.marked is not None else 4
    mroot = rc.roots[midx]
    one = RatFunc.from_const(1)
    zero = RatFunc.from_const(0)
    if mroot is INFINITY:
        ell = BinaryForm((zero, one))
    else:
        ell = BinaryForm((one, -mroot))
    q = BinaryForm((one,))
    for i, r in enumerate(rc.roots):
        if i == midx:
            continue
        factor = BinaryForm((zero, one)) if r is INFINITY else BinaryForm((one, -r))
        q = q * factor
    return FourOneForm(q, ell)


# ---------------------------------------------------------------------------
# Report assembly
# ---------------------------------------------------------------------------


def _frac_str(x) -> str:
    return str(x)


def _val_str(v) -> str:
    return str(v)


def _invariant_block(inv, backend) -> dict:
    return {
        lb: {"value": str(inv[lb]), "valuation": _val_str(backend.val(inv[lb]))}
        for lb in inv.labels
    }


def _tropical_block(tp) -> dict:
    return {
        "labels": list(tp.labels),
        "weights": list(tp.weights),
        "valuations": [_val_str(v) for v in tp.entries],
        "canonical": [_val_str(v) for v in tp.canonical()],
    }


def _skeleton_block(skel: PicardSkeleton) -> dict:
    return {
        "vertices": [{"id": vid, "genus": g} for vid, g in skel.vertices],
        "edges": [
            {"ends": [a, b], "length": _frac_str(ln), "multiplicity": m}
            for a, b, ln, m in skel.edges
        ],
        "first_betti": skel.first_betti,
        "total_genus": skel.total_genus,
    }


def _tree_block(tree: MetricTree5, rc: RootConfig) -> dict:
    return {
        "topology": tree.topology,
        "splits": [
            {"leaves": sorted(s), "length": _frac_str(ln)} for s, ln in tree.splits
        ],
        "marked_leaf": tree.marked,
        "leaves": [str(r) for r in rc.roots],
    }


def build_report(fi: FormInput, want: str) -> dict:
    """Assemble the report for one input.

    want is one of "invariants", "classify", "lengths", "picard", "oracle";
    later stages include the earlier ones.
    """
    stages = ("invariants", "classify", "lengths", "picard")
    backend = fi.backend
    rep: dict = {
        "schema": REPORT_SCHEMA,
        "kind": fi.kind,
        "backend": backend.describe(),
    }

    if want == "oracle":
        rep["oracle"] = _oracle_block(fi)
        return rep

    if want not in stages:
        raise ValueError(f"unknown report stage {want!r}")
    depth = stages.index(want)

    qi = evaluate_quintic(fi.quintic)
    rep["invariants"] = _invariant_block(qi, backend)
    rep["separable"] = bool(qi.Delta)
    if not qi.Delta:
        raise NonSeparableError("the quintic is not separable (vanishing discriminant)")
    tp = tropicalize(qi, backend)
    rep["tropical_point"] = _tropical_block(tp)

    ji = None
    if fi.fourone is not None:
        ji = evaluate_fourone(fi.fourone, check_separable=False)
        rep["fourone_invariants"] = _invariant_block(ji, backend)
        rep["fourone_tropical_point"] = _tropical_block(tropicalize(ji, backend))

    if depth < 1:
        return rep

    svals = {lb: backend.val(qi[lb]) for lb in qi.labels}
    jvals = {lb: backend.val(ji[lb]) for lb in ji.labels} if ji is not None else None
    cin = ClassifierInput(svals, jvals, backend.residue_char)
    tt = tree_type(cin)
    rep["tree_type"] = str(tt)
    mt = None
    if jvals is not None:
        mt = marked_tree_type(cin)
        rep["marked_tree_type"] = str(mt)

    if fi.rootconfig is not None and backend.residue_char == 0:
        tree = tree_from_roots(fi.rootconfig)
        rep["oracle"] = _tree_block(tree, fi.rootconfig)
        rep["oracle"]["agrees_tree_type"] = tree.unmarked_kind() == str(tt)
        if mt is not None:
            rep["oracle"]["agrees_marked_type"] = tree.marked_kind() == str(mt)

    if depth < 2:
        return rep

    lens = edge_lengths(cin, mt if mt is not None else tt)
    rep["edge_lengths"] = [_frac_str(x) for x in lens.lengths]
    rep["edge_order"] = "marked-first" if lens.marked_first else "ascending"
    if "oracle" in rep and rep["oracle"].get("splits") is not None:
        tree = tree_from_roots(fi.rootconfig)
        rep["oracle"]["agrees_edge_lengths"] = _lengths_agree(lens, mt, tree)

    if depth < 3:
        return rep

    if mt is None:
        raise PicardTropError(
            "the reduction type needs a (4,1)-form or a root list with a mark"
        )
    skel = picard_skeleton(mt, lens)
    rep["picard_skeleton"] = _skeleton_block(skel)
    return rep


def _lengths_agree(lens: EdgeLengths, mt, tree: MetricTree5) -> bool:
    if mt is not None and str(mt) == "III.1":
        return (
            lens.lengths[0] == tree.marked_split_length()
            and tuple(sorted(lens.lengths)) == tree.lengths_sorted()
        )
    return tuple(lens.lengths) == tree.lengths_sorted()


def _oracle_block(fi: FormInput) -> dict:
    if fi.rootconfig is None:
        raise PicardTropError("the oracle needs a root-list input")
    if fi.backend.residue_char != 0:
        raise PicardTropError("the root-based oracle is only available t-adically")
    tree = tree_from_roots(fi.rootconfig)
    return _tree_block(tree, fi.rootconfig)


# ---------------------------------------------------------------------------
# Renderers
# ---------------------------------------------------------------------------


def render_table(rep: dict) -> str:
    lines = []
    if "invariants" in rep:
        lines.append("invariant  valuation  value")
        for block in ("invariants", "fourone_invariants"):
            if block not in rep:
                continue
            for lb, cell in rep[block].items():
                val = cell["value"]
                if len(val) > 60:
                    val = val[:57] + "..."
                lines.append(f"{lb:<10} {cell['valuation']:>9}  {val}")
    if "tree_type" in rep:
        lines.append(f"tree type: {rep['tree_type']}")
    if "marked_tree_type" in rep:
        lines.append(f"marked tree type: {rep['marked_tree_type']}")
    if "edge_lengths" in rep:
        shown = ", ".join(rep["edge_lengths"]) or "(none)"
        lines.append(f"edge lengths ({rep['edge_order']}): {shown}")
    if "picard_skeleton" in rep:
        sk = rep["picard_skeleton"]
        lines.append("reduction type:")
        for v in sk["vertices"]:
            lines.append(f"  vertex {v['id']}  genus {v['genus']}")
        for e in sk["edges"]:
            mult = f" x{e['multiplicity']}" if e["multiplicity"] != 1 else ""
            lines.append(
                f"  edge {e['ends'][0]} -- {e['ends'][1]}  length {e['length']}{mult}"
            )
        lines.append(
            f"  first Betti number {sk['first_betti']}, total genus {sk['total_genus']}"
        )
    if "oracle" in rep:
        ob = rep["oracle"]
        if "topology" in ob:
            lines.append(f"oracle tree: {ob['topology']}")
            for s in ob.get("splits", []):
                pair = ", ".join(str(i) for i in s["leaves"])
                lines.append(f"  split {{{pair}}} | rest   length {s['length']}")
            if ob.get("marked_leaf") is not None:
                lines.append(f"  marked leaf: {ob['marked_leaf']}")
            for key in ("agrees_tree_type", "agrees_marked_type", "agrees_edge_lengths"):
                if key in ob:
                    lines.append(f"  {key.replace('_', ' ')}: {ob[key]}")
    return "\n".join(lines) + "\n"


def render_dot(rep: dict) -> str:
    """DOT output for whichever graph the report carries (skeleton preferred)."""
    if "picard_skeleton" in rep:
        sk = rep["picard_skeleton"]
        lines = ["graph picard_skeleton {"]
        for v in sk["vertices"]:
            lines.append(f'  {v["id"]} [label="genus {v["genus"]}"];')
        for e in sk["edges"]:
            for _ in range(e["multiplicity"]):
                lines.append(
                    f'  {e["ends"][0]} -- {e["ends"][1]} [label="{e["length"]}"];'
                )
        lines.append("}")
        return "\n".join(lines) + "\n"
    if "oracle" in rep and "topology" in rep["oracle"]:
        return _tree_dot(rep["oracle"])
    raise PicardTropError("nothing in this report renders as a graph; use picard or oracle")


def _tree_dot(ob: dict) -> str:
    splits = ob.get("splits", [])
    leaves = ob.get("leaves", [str(i) for i in range(5)])
    lines = ["graph metric_tree {"]
    for i, name in enumerate(leaves):
        mark = " (marked)" if ob.get("marked_leaf") == i else ""
        lines.append(f'  leaf{i} [label="{name}{mark}", shape=plaintext];')
    if not splits:
        lines.append('  n0 [label="", shape=point];')
        for i in range(len(leaves)):
            lines.append(f"  n0 -- leaf{i};")
    elif len(splits) == 1:
        lines.append('  n0 [label="", shape=point];')
        lines.append('  n1 [label="", shape=point];')
        side = set(splits[0]["leaves"])
        for i in range(len(leaves)):
            lines.append(f"  {'n1' if i in side else 'n0'} -- leaf{i};")
        lines.append(f'  n0 -- n1 [label="{splits[0]["length"]}"];')
    else:
        lines.append('  n0 [label="", shape=point];')
        lines.append('  n1 [label="", shape=point];')
        lines.append('  n2 [label="", shape=point];')
        side1 = set(splits[0]["leaves"])
        side2 = set(splits[1]["leaves"])
        for i in range(len(leaves)):
            node = "n1" if i in side1 else "n2" if i in side2 else "n0"
            lines.append(f"  {node} -- leaf{i};")
        lines.append(f'  n0 -- n1 [label="{splits[0]["length"]}"];')
        lines.append(f'  n0 -- n2 [label="{splits[1]["length"]}"];')
    lines.append("}")
    return "\n".join(lines) + "\n"
