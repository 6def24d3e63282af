import pytest
import sympy

from osprmat import superdata as sdm
from osprmat.decomp import (
    WeightSpans,
    build_bases,
    check_stability,
    check_sum_structure,
    closure_dimension,
    combination_coefficients,
    verify_decomp,
)
from osprmat.exactring import ONE, Q, QINV, QRat
from osprmat.instances import acceptance_instances
from osprmat.repn import build_finrep, coproduct_action, highest_vectors
from osprmat.rfinite import build_R0, eigenvalues
from osprmat.superlinalg import identity, tau, vec_scale

from conftest import make


@pytest.mark.parametrize("sd", acceptance_instances(), ids=lambda sd: sd.label())
def test_decomposition_suite(sd):
    report = verify_decomp(build_finrep(sd))
    assert report.ok, report.failures()


def numeric_kernel_dim(sd, lam, t0=2):
    M = (tau(sd) @ build_R0(sd) - identity(sd, "VV").scale(lam)).eval_q(t0)
    dense = sympy.Matrix([[sympy.Rational(str(x)) for x in row] for row in M.to_dense()])
    return dense.shape[0] - dense.rank()


@pytest.mark.parametrize(
    "inst",
    [("osp", 1, 2, "1"), ("osp", 3, 2, "01"), ("osp", 2, 2, "01"), ("osp", 2, 2, "10"), ("glA", 2, 1, "010")],
    ids=str,
)
def test_summand_dims_match_eigenspaces(inst):
    # independent route: kernels of tau R0 - lambda at t = 2
    sd = make(*inst)
    dec = build_bases(sd)
    lam1, lam2, _ = eigenvalues(sd)
    assert WeightSpans(sd, dec.vectors(1)).dim() == numeric_kernel_dim(sd, lam1)
    assert WeightSpans(sd, dec.vectors(-1)).dim() == numeric_kernel_dim(sd, lam2)


@pytest.mark.parametrize("parity, dims", [("01", (7, 8, 4, 8)), ("10", (8, 7, 8, 4))])
def test_frozen_osp22_dimensions(parity, dims):
    sd = sdm.build("osp", 2, 2, parity)
    rep = build_finrep(sd)
    dec = build_bases(sd, rep)
    hv = highest_vectors(rep)
    mats = [coproduct_action(rep, f"{k}{a}") for k in "ef" for a in range(1, sd.s + 1)]
    got = (
        WeightSpans(sd, dec.vectors(1)).dim(),
        WeightSpans(sd, dec.vectors(-1)).dim(),
        closure_dimension(sd, mats, [hv.w1]),
        closure_dimension(sd, mats, [hv.w2]),
    )
    assert got == dims
    # {w1, w2, w3} misses one dimension exactly when n = m
    assert closure_dimension(sd, mats, [hv.w1, hv.w2, hv.w3]) == sd.N**2 - 4
    assert closure_dimension(sd, mats, [hv.w1, hv.w2, hv.w3_tilde]) == sd.N**2


def test_w3_side_follows_parity_of_first_vector():
    for parity in ("01", "10"):
        sd = sdm.build("osp", 2, 2, parity)
        dec = build_bases(sd)
        side = 1 if sd.par(1) == 0 else -1
        assert WeightSpans(sd, dec.vectors(side)).contains(dec.w3line)
        assert not WeightSpans(sd, dec.vectors(-side)).contains(dec.w3line)


def test_frozen_combination_coefficients_osp12():
    bp, bm, bs = combination_coefficients(sdm.build("osp", 1, 2, "1"))
    d = Q * Q + ONE
    assert bp == {1: QRat(Q + 1, d)}
    assert bm == {1: QRat(Q * Q - Q, d)}
    assert bs is None


def test_perturbed_vector_breaks_stability():
    sd = sdm.build("osp", 3, 2, "10")
    rep = build_finrep(sd)
    dec = build_bases(sd, rep)
    key = next(k for k, v in dec.uplus.items() if len(v) > 1)
    vec = dict(dec.uplus[key])
    r = max(vec)
    vec[r] = vec[r] * 2
    dec.uplus[key] = vec
    assert not check_stability(dec, rep).ok


def test_perturbed_combination_fails():
    sd = sdm.build("osp", 4, 2, "100")
    rep = build_finrep(sd)
    dec = build_bases(sd, rep)
    key = (1, sd.prime(1))
    dec.uminus[key] = vec_scale(Q, dec.uminus[key])
    report = check_sum_structure(dec, rep)
    assert "combination-closed-form" in {f["id"] for f in report.failures()}
