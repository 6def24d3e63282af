import dataclasses
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from osprmat import superdata as sdm
from osprmat.exactring import Q, QINV, ZRat, qpow
from osprmat.raffine import (
    ATYPE,
    affine_case,
    EigenvalueMismatch,
    baxterization_constants,
    build_affine_rep,
    build_Rz,
    check_baxterization,
    check_rational_YBE,
    check_spectral_YBE,
    rational_limit_check,
    verify_affine,
    verify_affine_rep,
    yang_baxterize,
)
from osprmat.repn import build_finrep
from osprmat.rfinite import build_R0, eigenvalues
from osprmat.superlinalg import E, identity, kron_graded, tau

AFFINE_SMALL = [
    ("osp", 1, 2, "1"),
    ("osp", 2, 2, "01"),
    ("osp", 2, 2, "10"),
    ("osp", 3, 2, "10"),
    ("glA", 1, 1, "01"),
    ("glA", 2, 1, "100"),
]


@pytest.mark.parametrize("inst", AFFINE_SMALL, ids=str)
def test_affine_suite_small(inst):
    sd = sdm.build(*inst)
    report = verify_affine(build_finrep(sd))
    assert report.ok, report.failures()


def test_frozen_gl11_spectral_entries():
    sd = sdm.build("glA", 1, 1, "01")
    Rz = build_Rz(sd).Rz
    z = ZRat.z()
    assert Rz.get(0, 0) == z * Q - QINV
    assert Rz.get(1, 2) == ZRat.lift(Q - QINV)
    assert Rz.get(2, 1) == z * (Q - QINV)
    assert Rz.get(3, 3) == z * QINV - Q


def test_frozen_osp12_corner_entry():
    sd = sdm.build("osp", 1, 2, "1")
    z = ZRat.z()
    want = (z * z * QINV - z * (Q * Q + Q) + Q**4) / (z - 1)
    assert build_Rz(sd).Rz.get(0, 0) == want


@pytest.mark.parametrize("inst", AFFINE_SMALL, ids=str)
def test_unitarity_at_rational_points(inst):
    # independent property: Rhat(z) Rhat(1/z) is a scalar
    sd = sdm.build(*inst)
    spec = build_Rz(sd)
    T = tau(sd).eval_q(Fraction(3, 2))
    A = T @ spec.at(Fraction(3, 2), 3)
    B = T @ spec.at(Fraction(3, 2), Fraction(1, 3))
    prod = A @ B
    c = prod.get(0, 0)
    assert c and prod == identity(sd, "VV").eval_q(1).scale(c)


def test_yang_baxterize_from_braid_matrix():
    sd = sdm.build("osp", 2, 2, "10")
    Rhat = tau(sd) @ build_R0(sd)
    spec = build_Rz(sd)
    assert yang_baxterize(Rhat, eigenvalues(sd), affine_case(sd)) == tau(sd) @ spec.Rz


def test_wrong_eigenvalues_rejected():
    sd = sdm.build("glA", 1, 1, "01")
    Rhat = tau(sd) @ build_R0(sd)
    with pytest.raises(EigenvalueMismatch):
        yang_baxterize(Rhat, (Q, Q, None), ATYPE)


def test_baxterization_constants_for_a_type():
    assert baxterization_constants((qpow(-1), -Q, None), ATYPE) == (qpow(-1), -QINV)


def perturbed(spec, k=1):
    sd = spec.sd
    bump = kron_graded(E(sd, 1, 2), E(sd, 2, 1, Q))
    coeffs = list(spec.coeffs)
    coeffs[k] = coeffs[k] + bump
    return dataclasses.replace(spec, coeffs=coeffs)


def test_symbolic_and_specialized_ybe_agree():
    spec = build_Rz(sdm.build("osp", 2, 2, "01"))
    assert check_spectral_YBE(spec, mode="symbolic").ok
    assert check_spectral_YBE(spec, mode="specialize").ok
    bad = perturbed(spec)
    assert not check_spectral_YBE(bad, mode="symbolic", braid=False).ok
    assert not check_spectral_YBE(bad, mode="specialize", braid=False).ok


def test_perturbed_coefficients_fail_baxterization():
    spec = build_Rz(sdm.build("osp", 1, 2, "1"))
    report = check_baxterization(perturbed(spec))
    assert not report.ok
    assert any("z^1" in f["id"] for f in report.failures())


SPEC_45 = build_Rz(sdm.build("osp", 4, 2, "010"))


@settings(max_examples=5, deadline=None)
@given(
    st.fractions(min_value=2, max_value=7, max_denominator=3),
    st.fractions(min_value=-4, max_value=4, max_denominator=5).filter(bool),
    st.fractions(min_value=-4, max_value=4, max_denominator=5).filter(bool),
)
def test_spectral_ybe_random_points(t0, z1, z2):
    assert check_spectral_YBE(SPEC_45, mode="specialize", points=[(t0, z1, z2)], braid=False).ok


def test_affine_module_checks():
    rep = build_finrep(sdm.build("osp", 3, 2, "01"))
    aff = build_affine_rep(rep)
    assert verify_affine_rep(aff).ok


def test_rational_ybe_and_wrong_shift(monkeypatch):
    import osprmat.raffine as ra

    sd = sdm.build("osp", 3, 2, "10")
    assert check_rational_YBE(sd).ok
    real = ra.rational_R
    monkeypatch.setattr(ra, "rational_R", lambda sd: (real(sd)[0] + 1, real(sd)[1]))
    assert not check_rational_YBE(sd).ok


def test_frozen_rational_limit_summary():
    report = rational_limit_check(sdm.build("osp", 1, 2, "1"))
    assert report.ok
    for u0 in (2, 5):
        info = report.summary[u0]
        assert info["first_order_entries"] == 10
        assert info["second_order_entries"] == [(1, 1), (3, 3), (5, 5), (7, 7), (9, 9)]
        lo, hi = info["first_order_ratio_range"]
        assert 9.9 < lo <= hi < 10.1
