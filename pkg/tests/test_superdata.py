from fractions import Fraction

import pytest

from osprmat import superdata as sdm
from osprmat.instances import acceptance_instances

INSTANCES = acceptance_instances()


def ids(sd):
    return sd.label()


def expected_root_counts(sd):
    m, n = sd.m, sd.n
    if not sd.is_osp:
        return m * (m - 1) // 2 + n * (n - 1) // 2, m * n
    so_pos = (m * (m - 1) // 2 - m // 2) // 2
    sp_pos = (n // 2) ** 2
    return so_pos + sp_pos, m * n // 2


@pytest.mark.parametrize("sd", INSTANCES, ids=ids)
def test_positive_root_counts(sd):
    even = sum(1 for r in sd.positive_roots if r.parity == 0)
    odd = sum(1 for r in sd.positive_roots if r.parity == 1)
    assert (even, odd) == expected_root_counts(sd)


@pytest.mark.parametrize("sd", INSTANCES, ids=ids)
def test_rho_pairs_to_half_norm(sd):
    for a in sd.simple_roots:
        assert sd.rho_pair(a.weight) == Fraction(sd.pair(a.weight, a.weight), 2)


@pytest.mark.parametrize("sd", INSTANCES, ids=ids)
def test_highest_root_is_maximal(sd):
    th, coords = sd.highest_root()
    weights = {r.weight for r in sd.positive_roots}
    assert th in weights
    for a in sd.simple_roots:
        assert sd.wadd(th, a.weight) not in weights
    assert all(c > 0 for c in coords)


@pytest.mark.parametrize("sd", INSTANCES, ids=ids)
def test_positive_roots_are_nonnegative_combinations(sd):
    for r in sd.positive_roots:
        coords = sd.simple_coords(r.weight)
        assert all(c >= 0 for c in coords)
        assert sum(c * a.parity for c, a in zip(coords, sd.simple_roots)) % 2 == r.parity


@pytest.mark.parametrize("sd", INSTANCES, ids=ids)
def test_json_round_trip(sd):
    d = sd.to_json()
    again = sdm.build(d["family"], d["m"], d["n"], d["parity"][: sd.s] if sd.is_osp else d["parity"], d["theta"])
    assert again.to_json() == d


def test_case_tags():
    assert sdm.build("osp", 3, 2, "10").case_tag == sdm.ODD_M
    assert sdm.build("osp", 4, 2, "100").case_tag == sdm.FORK
    assert sdm.build("osp", 4, 2, "001").case_tag == sdm.NOFORK
    assert sdm.build("glA", 1, 1, "01").case_tag is None


def test_osp12_data():
    sd = sdm.build("osp", 1, 2, "1")
    assert sd.parity == (1, 0, 1)
    assert sd.eps_pair(1, 1) == -1
    assert [a.parity for a in sd.simple_roots] == [1]
    assert sd.cartan == ((-1,),)


def test_theta_sign_rule():
    sd = sdm.build("osp", 2, 2, "10", (-1, 1))
    assert sd.theta == (-1, 1, 1, 1)
    with pytest.raises(sdm.ThetaViolation):
        sdm.build("osp", 2, 2, "10", (1, -1))
    with pytest.raises(sdm.ThetaViolation):
        sdm.build("osp", 2, 2, "10", (1, 1, 1, 1))
    with pytest.raises(sdm.ThetaViolation):
        sdm.build("glA", 1, 1, "01", (1, -1))


def test_input_errors():
    with pytest.raises(sdm.OddN_for_osp):
        sdm.build("osp", 2, 1, "1")
    with pytest.raises(sdm.BadParityLength):
        sdm.build("osp", 3, 2, "100")
    with pytest.raises(sdm.BadParityLength):
        sdm.build("glA", 2, 1, "000")
    with pytest.raises(sdm.SuperDataError):
        sdm.build("sl", 2, 1, "001")


def test_admissible_parity_counts():
    assert len(sdm.admissible_parities("osp", 2, 4)) == 3
    assert len(sdm.admissible_parities("glA", 2, 2)) == 6
