from fractions import Fraction

import pytest
import sympy
from hypothesis import given
from hypothesis import strategies as st

from osprmat import superdata as sdm
from osprmat.exactring import Q, QRat, ONE
from osprmat.superlinalg import (
    E,
    GradedMatrix,
    SpanBasis,
    SuperDataMismatch,
    basis_vector,
    identity,
    kron_graded,
    leg_embed,
    nullspace,
    partial_supertranspose,
    rank,
    supertranspose,
    tau,
)

SD = sdm.build("osp", 3, 2, "10")  # N = 5 with two odd vectors
GL = sdm.build("glA", 2, 1, "010")

units = st.integers(1, SD.N)
elem = st.tuples(units, units, st.integers(-3, 3).filter(bool))


def parity_of(sd, i, j):
    return (sd.par(i) + sd.par(j)) % 2


@given(elem, elem, elem, elem)
def test_kron_mixed_product_sign(a, b, c, d):
    A, B, C, D = (E(SD, i, j, k) for i, j, k in (a, b, c, d))
    sign = -1 if parity_of(SD, b[0], b[1]) and parity_of(SD, c[0], c[1]) else 1
    lhs = kron_graded(A, B) @ kron_graded(C, D)
    assert lhs == kron_graded(A @ C, B @ D).scale(sign)


@given(elem, elem, units, units)
def test_kron_acts_with_koszul_sign(a, b, i, j):
    A, B = E(SD, *a), E(SD, *b)
    v = basis_vector(SD, i, j)
    got = kron_graded(A, B) @ v
    sign = -1 if parity_of(SD, b[0], b[1]) and SD.par(i) else 1
    want = {}
    if a[1] == i and b[1] == j:
        want = {(a[0] - 1) * SD.N + b[0] - 1: sign * a[2] * b[2]}
    assert got == want


@given(elem, elem)
def test_tau_swaps_tensor_factors(a, b):
    A, B = E(SD, *a), E(SD, *b)
    T = tau(SD)
    sign = -1 if parity_of(SD, a[0], a[1]) and parity_of(SD, b[0], b[1]) else 1
    assert T @ kron_graded(A, B) @ T == kron_graded(B, A).scale(sign)


def test_tau_squares_to_identity():
    for sd in (SD, GL):
        T = tau(sd)
        assert T @ T == identity(sd, "VV")


@given(elem, elem)
def test_supertranspose_reverses_products(a, b):
    X, Y = E(SD, *a), E(SD, *b)
    sign = -1 if parity_of(SD, a[0], a[1]) and parity_of(SD, b[0], b[1]) else 1
    assert supertranspose(X @ Y) == (supertranspose(Y) @ supertranspose(X)).scale(sign)


@given(elem)
def test_supertranspose_has_order_four(a):
    X = E(SD, *a)
    twice = supertranspose(supertranspose(X))
    assert twice == X.scale(-1 if parity_of(SD, a[0], a[1]) else 1)
    assert supertranspose(supertranspose(twice)) == X


@given(elem, elem)
def test_partial_supertranspose_on_products(a, b):
    A, B = E(SD, *a), E(SD, *b)
    assert partial_supertranspose(kron_graded(A, B), 1) == kron_graded(supertranspose(A), B)
    assert partial_supertranspose(kron_graded(A, B), 2) == kron_graded(A, supertranspose(B))


@given(elem, elem)
def test_leg_embeddings_agree_with_graded_kron(a, b):
    A, B = E(SD, *a), E(SD, *b)
    I = identity(SD, "V")
    R = kron_graded(A, B)
    assert leg_embed(R, "12") == kron_graded(R, I)
    assert leg_embed(R, "23") == kron_graded(I, R)
    assert leg_embed(R, "13") == kron_graded(kron_graded(A, I), B)


def test_mismatched_superdata():
    with pytest.raises(SuperDataMismatch):
        kron_graded(E(SD, 1, 1), E(GL, 1, 1))


def test_json_round_trip_is_exact():
    M = kron_graded(E(SD, 1, 2, Q - 1), E(SD, 3, 3, QRat(ONE, Q + 1)))
    back = GradedMatrix.from_json(M.to_json(), SD)
    assert back == M
    assert back.to_json() == M.to_json()


vectors = st.lists(
    st.dictionaries(st.integers(0, 5), st.integers(-3, 3), max_size=4),
    max_size=6,
)


@given(vectors)
def test_rank_matches_sympy(vs):
    mat = sympy.Matrix([[v.get(k, 0) for k in range(6)] for v in vs]) if vs else sympy.zeros(0, 6)
    assert rank(vs) == mat.rank()


@given(vectors)
def test_nullspace_vectors_are_relations(vs):
    kernel = nullspace(vs, 6)
    assert len(kernel) == len(vs) - rank(vs)
    for x in kernel:
        total = {}
        for k, c in x.items():
            for i, v in vs[k].items():
                total[i] = total.get(i, 0) + c * v
        assert not any(total.values())


@given(vectors)
def test_span_basis_express(vs):
    basis = SpanBasis()
    for k, v in enumerate(vs):
        basis.add(v, tag=k)
    target = {}
    for k, v in enumerate(vs):
        for i, x in v.items():
            target[i] = target.get(i, 0) + (k + 1) * x
    coords = basis.express(target)
    assert coords is not None
    rebuilt = {}
    for k, c in coords.items():
        for i, x in vs[k].items():
            rebuilt[i] = rebuilt.get(i, 0) + c * x
    assert {i: v for i, v in rebuilt.items() if v} == {i: Fraction(v) for i, v in target.items() if v}


def test_symbolic_span_membership():
    basis = SpanBasis()
    basis.add({0: ONE, 1: Q})
    assert basis.contains({0: Q - 1, 1: Q * Q - Q})
    assert not basis.contains({0: ONE, 1: ONE})
