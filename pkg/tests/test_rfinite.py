import pytest
import sympy

from osprmat import superdata as sdm
from osprmat.exactring import Q, qpow
from osprmat.repn import build_finrep, highest_vectors
from osprmat.rfinite import (
    NotEigenvector,
    build_R0,
    build_Rinf,
    build_RJ,
    build_RJ_closed,
    check_constant_YBE,
    check_intertwining,
    eigen_check,
    eigenvalues,
    verify_finite,
)
from osprmat.superlinalg import E, identity, kron_graded, tau

from conftest import SMALL, make


@pytest.mark.parametrize("inst", SMALL, ids=str)
def test_finite_suite_small(inst):
    sd = make(*inst)
    report = verify_finite(build_finrep(sd))
    assert report.ok, report.failures()


def test_frozen_eigenvalues():
    assert eigenvalues(sdm.build("osp", 1, 2, "1")) == (-Q, qpow(-1), qpow(-2))
    assert eigenvalues(sdm.build("osp", 3, 2, "01")) == (qpow(-1), -Q, 1)
    assert eigenvalues(sdm.build("glA", 1, 1, "01")) == (qpow(-1), -Q, None)


def test_frozen_gl11_R0():
    sd = sdm.build("glA", 1, 1, "01")
    dense = build_R0(sd).to_dense()
    assert dense[0][0] == qpow(-1) and dense[3][3] == Q
    assert dense[1][2] == qpow(-1) - Q
    assert dense[2][1] == 0


@pytest.mark.parametrize("inst", SMALL, ids=str)
def test_spectrum_matches_numeric_eigenvalues(inst):
    # independent route: characteristic polynomial of tau R0 at t = 2
    sd = make(*inst)
    Rhat = (tau(sd) @ build_R0(sd)).eval_q(2)
    M = sympy.Matrix([[sympy.Rational(str(x)) for x in row] for row in Rhat.to_dense()])
    roots = set(sympy.roots(M.charpoly().as_expr()).keys())
    want = {sympy.Rational(str(l.eval(2))) for l in eigenvalues(sd) if l is not None}
    assert roots == want


@pytest.mark.parametrize("inst", SMALL, ids=str)
def test_braid_operator_minimal_polynomial(inst):
    sd = make(*inst)
    Rhat = tau(sd) @ build_R0(sd)
    I = identity(sd, "VV")
    prod = I
    for lam in eigenvalues(sd):
        if lam is not None:
            prod = prod @ (Rhat - I.scale(lam))
    assert prod.is_zero()


@pytest.mark.parametrize("inst", SMALL, ids=str)
def test_classical_limit_is_identity(inst):
    sd = make(*inst)
    assert build_R0(sd).eval_q(1) == identity(sd, "VV").eval_q(1)


def test_RJ_matches_closed_form():
    for inst in SMALL:
        sd = make(*inst)
        assert build_RJ(sd)[0] == build_RJ_closed(sd)


def test_Rinf_is_inverse_of_flipped_R0():
    sd = sdm.build("osp", 4, 2, "001")
    t = tau(sd)
    assert (t @ build_R0(sd)) @ (t @ build_Rinf(sd)) == identity(sd, "VV")


def test_perturbed_R_fails_intertwining_and_eigen():
    sd = sdm.build("osp", 3, 2, "10")
    rep = build_finrep(sd)
    R = build_R0(sd)
    bad = R + kron_graded(E(sd, 1, 1), E(sd, 2, 2, Q - 1))
    report = check_intertwining(bad, rep)
    assert not report.ok
    with pytest.raises(NotEigenvector):
        eigen_check(tau(sd) @ bad, highest_vectors(rep), expected=eigenvalues(sd))


def test_eigen_check_wrong_expected():
    sd = sdm.build("osp", 1, 2, "1")
    rep = build_finrep(sd)
    with pytest.raises(NotEigenvector):
        eigen_check(tau(sd) @ build_R0(sd), highest_vectors(rep), expected=(Q, None, None))


def test_constant_ybe_specialized_and_broken():
    sd = sdm.build("osp", 4, 2, "010")
    R = build_R0(sd)
    assert check_constant_YBE(R, mode="specialize").ok
    bad = R + kron_graded(E(sd, 1, 2), E(sd, 2, 1))
    assert not check_constant_YBE(bad, mode="specialize", braid=False).ok
