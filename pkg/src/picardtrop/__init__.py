"""Exact tropical invariants of binary quintics and (4,1)-forms.

Computes projective invariants over Q(t) (or p-adically over Q), reads the
phylogenetic tree type and edge lengths of the root configuration off their
valuations, and produces the reduction type of the associated Picard curve,
cross-checked by an independent root-based tree reconstruction.
"""

from .classify import (
    ClassifierInput,
    EdgeLengths,
    MarkedTreeType,
    PicardSkeleton,
    TreeType,
    edge_lengths,
    marked_tree_type,
    picard_skeleton,
    theorem_conditions,
    tree_type,
)
from .errors import (
    ExprSyntaxError,
    InternalConsistencyError,
    NonSeparableError,
    PicardTropError,
    UnsupportedCharacteristicError,
    VerificationMismatchError,
)
from .exprparse import parse_ratfunc
from .forms import BinaryForm, FourOneForm, Mobius, act, discriminant, form_from_roots
from .invariants import (
    FourOneInvariants,
    PAdicBackend,
    QuinticInvariants,
    TAdicBackend,
    TropicalPoint,
    evaluate_fourone,
    evaluate_quintic,
    tropicalize,
    universal_fourone_invariants,
    universal_quintic_invariants,
)
from .multipoly import MultiPoly
from .ratfunc import RatFunc, T
from .transvectant import form_power, transvectant, transvectant_scalar
from .treeoracle import (
    FAMILIES,
    INFINITY,
    FamilySample,
    MetricTree5,
    RootConfig,
    expected_tree,
    random_family_sample,
    sample_family,
    tree_from_roots,
)
from .unipoly import UniPoly
from .valuation import INF, Val, val_p

__version__ = "0.1.0"

__all__ = [
    "BinaryForm",
    "ClassifierInput",
    "EdgeLengths",
    "ExprSyntaxError",
    "FAMILIES",
    "FamilySample",
    "FourOneForm",
    "FourOneInvariants",
    "INF",
    "INFINITY",
    "InternalConsistencyError",
    "MarkedTreeType",
    "MetricTree5",
    "Mobius",
    "MultiPoly",
    "NonSeparableError",
    "PAdicBackend",
    "PicardSkeleton",
    "PicardTropError",
    "QuinticInvariants",
    "RatFunc",
    "RootConfig",
    "T",
    "TAdicBackend",
    "TreeType",
    "TropicalPoint",
    "UniPoly",
    "UnsupportedCharacteristicError",
    "Val",
    "VerificationMismatchError",
    "act",
    "discriminant",
    "edge_lengths",
    "evaluate_fourone",
    "evaluate_quintic",
    "expected_tree",
    "form_from_roots",
    "form_power",
    "marked_tree_type",
    "parse_ratfunc",
    "picard_skeleton",
    "random_family_sample",
    "sample_family",
    "theorem_conditions",
    "transvectant",
    "transvectant_scalar",
    "tree_from_roots",
    "tree_type",
    "tropicalize",
    "universal_fourone_invariants",
    "universal_quintic_invariants",
    "val_p",
]
