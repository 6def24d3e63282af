import dataclasses

import pytest

from osprmat import superdata as sdm
from osprmat.exactring import ONE, qpow
from osprmat.instances import acceptance_instances
from osprmat.raffine import build_affine_rep
from osprmat.repn import (
    UnknownGenerator,
    X,
    build_finrep,
    coproduct_action,
    highest_vectors,
    highest_weight_space_dim,
    verify_relations,
    verify_serre,
)
from osprmat.superlinalg import basis_vector, identity, tau

INSTANCES = acceptance_instances()


@pytest.mark.parametrize("sd", INSTANCES, ids=lambda sd: sd.label())
def test_relations_and_serre(sd):
    rep = build_finrep(sd)
    report = verify_relations(rep)
    verify_serre(rep, report)
    assert report.ok, report.failures()


@pytest.mark.parametrize(
    "parity, expected",
    [("100", "affine-quartic(0, 1, 2, 3)"), ("001", "affine-quartic(3, 2, 0, 1)")],
)
def test_affine_serre_quartic_cases(parity, expected):
    rep = build_finrep(sdm.build("osp", 4, 2, parity))
    build_affine_rep(rep)
    report = verify_serre(rep)
    ids = [c["id"] for c in report.checks]
    assert expected in ids and expected + "-values" in ids
    assert report.ok, report.failures()


def test_affine_serre_osp32_cases():
    rep = build_finrep(sdm.build("osp", 3, 2, "10"))
    build_affine_rep(rep)
    report = verify_serre(rep)
    ids = {c["id"] for c in report.checks}
    assert "affine-osp32(0, 1, 2)" in ids
    assert report.ok, report.failures()
    rep = build_finrep(sdm.build("osp", 3, 2, "01"))
    build_affine_rep(rep)
    report = verify_serre(rep)
    ids = {c["id"] for c in report.checks}
    assert {"affine-cubic(0,1,2)-values", "affine-cubic(2,0,1)-values"} <= ids
    assert report.ok, report.failures()


def test_cubic_serre_present_for_odd_then_even_end():
    rep = build_finrep(sdm.build("osp", 2, 4, "110"))
    report = verify_serre(rep)
    assert "cubic-serre" in {c["id"] for c in report.checks}
    assert report.ok


def test_perturbed_generator_fails_ef_relation():
    sd = sdm.build("osp", 3, 2, "10")
    rep = build_finrep(sd)
    bad = dataclasses.replace(rep, e=[rep.e[0].scale(2)] + rep.e[1:], _cache={})
    report = verify_relations(bad)
    assert not report.ok
    assert "ef[1,1]" in {c["id"] for c in report.failures()}


def test_classical_generators_are_X_combinations():
    # at q = 1 e_i is a multiple of X_{i,i+1} away from the last node
    sd = sdm.build("osp", 4, 2, "010")
    rep = build_finrep(sd)
    for i in range(1, sd.s):
        e = rep.e[i - 1].eval_q(1)
        x = X(sd, i, i + 1).eval_q(1)
        r, c = next(iter(x.items()))[0]
        assert e == x.scale(e.get(r, c) / x.get(r, c))


@pytest.mark.parametrize("sd", INSTANCES, ids=lambda sd: sd.label())
def test_highest_vectors_are_killed_by_raising(sd):
    rep = build_finrep(sd)
    hv = highest_vectors(rep)
    vecs = [hv.w1, hv.w2] + ([hv.w3] if sd.is_osp else [])
    for a in range(1, sd.s + 1):
        E = coproduct_action(rep, f"e{a}")
        for v in vecs:
            assert not any((E @ v).values())
    if sd.is_osp:
        assert any((coproduct_action(rep, "e1") @ hv.w3_tilde).values()) or any(
            (coproduct_action(rep, f"e{a}") @ hv.w3_hat).values() for a in range(1, sd.s + 1)
        )


@pytest.mark.parametrize("sd", INSTANCES, ids=lambda sd: sd.label())
def test_highest_weight_spaces_are_lines(sd):
    rep = build_finrep(sd)
    w11 = sd.wscale(2, sd.eps(1))
    w12 = sd.wadd(sd.eps(1), sd.eps(2))
    assert highest_weight_space_dim(rep, w11) == 1
    assert highest_weight_space_dim(rep, w12) == 1
    if sd.is_osp:
        assert highest_weight_space_dim(rep, sd.zero_weight()) == 1


def test_frozen_osp12_highest_vectors():
    sd = sdm.build("osp", 1, 2, "1")
    hv = highest_vectors(build_finrep(sd))
    assert hv.w2 == {1: ONE, 3: qpow(-1)}
    assert hv.w3 == {2: ONE, 4: qpow(-0.5), 6: -qpow(-1)}


def test_coproduct_op_variant_is_conjugate_by_flip():
    sd = sdm.build("glA", 2, 1, "010")
    rep = build_finrep(sd)
    t = tau(sd)
    for name in ("e1", "f2", "k1"):
        assert coproduct_action(rep, name, "Δop") == t @ coproduct_action(rep, name) @ t


def test_k_generators_are_inverse():
    rep = build_finrep(sdm.build("osp", 2, 2, "01"))
    assert rep.gen("k2").mat @ rep.gen("kinv2").mat == identity(rep.sd, "V")


def test_unknown_generator():
    rep = build_finrep(sdm.build("osp", 1, 2, "1"))
    with pytest.raises(UnknownGenerator):
        rep.gen("h1")
    with pytest.raises(UnknownGenerator):
        rep.gen("e5")
    with pytest.raises(UnknownGenerator):
        rep.gen("e0")
