from fractions import Fraction

import pytest

from picardtrop.classify import ClassifierInput
from picardtrop.forms import BinaryForm, form_from_roots
from picardtrop.invariants import TAdicBackend, evaluate_fourone, evaluate_quintic
from picardtrop.ratfunc import ONE, ZERO, RatFunc, T


@pytest.fixture(scope="session")
def backend():
    return TAdicBackend()


def quintic_from_lambdas(lam1, lam2):
    """xz(x-z)(x - lam1 z)(x - lam2 z), the standard root presentation."""
    return form_from_roots([ZERO, ONE, lam1, lam2], lead=ONE) * BinaryForm((ZERO, ONE))


def classifier_input_for(qf, backend):
    """ClassifierInput with both invariant sets for a (4,1)-form over Q(t)."""
    qi = evaluate_quintic(qf.quintic)
    ji = evaluate_fourone(qf, check_separable=False)
    svals = {lb: backend.val(qi[lb]) for lb in qi.labels}
    jvals = {lb: backend.val(ji[lb]) for lb in ji.labels}
    return ClassifierInput(svals, jvals, backend.residue_char)


PAPER_F2 = quintic_from_lambdas(T**2, RatFunc.from_const(2))
PAPER_F3 = quintic_from_lambdas(T, 1 + 2 * T)

PAPER_F2_COEFF_EXPRS = ["0", "1", "-(3+t^2)", "2+3*t^2", "-2*t^2", "0"]
PAPER_F3_COEFF_EXPRS = ["0", "1", "-(2+3*t)", "1+4*t+2*t^2", "-(t+2*t^2)", "0"]
