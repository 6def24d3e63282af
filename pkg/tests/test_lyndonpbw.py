from fractions import Fraction
from itertools import product

import pytest
from hypothesis import given
from hypothesis import strategies as st

from osprmat import superdata as sdm
from osprmat.exactring import ONE, QRat
from osprmat.instances import acceptance_instances
from osprmat.lyndonpbw import (
    FactorizationMismatch,
    NotLyndon,
    SimpleRoot,
    TooLong,
    canonical_factorization,
    twisted_pairing_closed,
    concat,
    costandard_factorization,
    costandard_split,
    dominant_lyndon,
    is_lyndon,
    pair_tw,
    pair_tw_bruteforce,
    q_bracketing,
    shuffle,
    theta_factorized,
    verify_lyndon,
    word_degree,
)
from osprmat.repn import build_finrep
from osprmat.superlinalg import E, kron_graded

from conftest import SMALL, make

words = st.lists(st.integers(1, 3), min_size=1, max_size=9).map(tuple)


def lyndon_by_rotation(w):
    return all(w < w[k:] + w[:k] for k in range(1, len(w)))


@given(words)
def test_is_lyndon_matches_rotation_definition(w):
    assert is_lyndon(w) == lyndon_by_rotation(w)


@given(words)
def test_canonical_factorization(w):
    fs = canonical_factorization(w)
    assert sum(fs, ()) == w
    assert all(is_lyndon(f) for f in fs)
    assert all(a >= b for a, b in zip(fs, fs[1:]))


@given(words.filter(lambda w: len(w) > 1 and is_lyndon(w)))
def test_costandard_factorization(w):
    a, b = costandard_factorization(w)
    assert a + b == w and is_lyndon(a) and is_lyndon(b)
    assert not any(is_lyndon(w[:k]) for k in range(len(a) + 1, len(w)))


def test_costandard_rejects_non_lyndon():
    with pytest.raises(NotLyndon):
        costandard_factorization((2, 1))
    with pytest.raises(NotLyndon):
        costandard_factorization((1,))


SD = sdm.build("osp", 4, 2, "010")
short = st.lists(st.integers(1, SD.s), min_size=1, max_size=3).map(tuple)


@given(short, short, short)
def test_shuffle_is_associative(u, v, w):
    x, y, z = {u: ONE}, {v: ONE}, {w: ONE}
    assert shuffle(SD, shuffle(SD, x, y), z) == shuffle(SD, x, shuffle(SD, y, z))


@given(short, short)
def test_shuffle_term_count_at_q1(u, v):
    # at q = 1 with signs dropped the coefficients count interleavings
    from math import comb

    total = sum(abs(c.eval(1)) for c in shuffle(SD, {u: ONE}, {v: ONE}).values())
    assert total <= comb(len(u) + len(v), len(u))


def test_pair_tw_guard_and_lengths():
    assert pair_tw_bruteforce(SD, (1, 2), (1,)) == 0
    with pytest.raises(TooLong):
        pair_tw_bruteforce(SD, (1,) * 10, (1,) * 10)


def leading_good_words(sd, maxlen):
    """Leading words of shuffle products of letters, by exact elimination."""
    good = set()
    for L in range(1, maxlen + 1):
        bydeg = {}
        for seq in product(range(1, sd.s + 1), repeat=L):
            x = {(seq[0],): ONE}
            for i in seq[1:]:
                x = shuffle(sd, x, {(i,): ONE})
            if x:
                bydeg.setdefault(word_degree(sd, seq), []).append(x)
        for els in bydeg.values():
            order = sorted({w for x in els for w in x}, reverse=True)
            pos = {w: k for k, w in enumerate(order)}
            rows = [{pos[w]: QRat.lift(c) for w, c in x.items()} for x in els]
            while rows:
                p = min(min(r) for r in rows)
                piv = next(r for r in rows if min(r) == p)
                good.add(order[p])
                rows.remove(piv)
                nxt = []
                for r in rows:
                    if p in r:
                        f = r[p] / piv[p]
                        r = {k: r.get(k, 0) - f * piv.get(k, 0) for k in set(r) | set(piv)}
                        r = {k: v for k, v in r.items() if v}
                    if r:
                        nxt.append(r)
                rows = nxt
    return good


ORACLE_CASES = [
    ("osp", 3, 2, "10"),
    ("osp", 3, 2, "01"),
    ("osp", 4, 2, "100"),
    ("osp", 4, 2, "010"),
    ("osp", 4, 2, "001"),
    ("osp", 2, 4, "110"),
    ("osp", 2, 2, "01"),
    ("glA", 2, 1, "010"),
]


@pytest.mark.parametrize("inst", ORACLE_CASES, ids=str)
def test_dominant_words_match_elimination_oracle(inst):
    sd = make(*inst)
    got = {w for w, _ in dominant_lyndon(sd) if len(w) <= 5}
    want = {w for w in leading_good_words(sd, 5) if is_lyndon(w)}
    assert got == want


@pytest.mark.parametrize("sd", acceptance_instances(), ids=lambda sd: sd.label())
def test_dominant_words_biject_with_reduced_roots(sd):
    degs = sorted(d for _, d in dominant_lyndon(sd))
    assert degs == sorted(r.weight for r in sd.reduced_positive_roots)


def test_frozen_dominant_words_osp32():
    sd = sdm.build("osp", 3, 2, "10")
    assert [w for w, _ in dominant_lyndon(sd)] == [(1,), (1, 2), (1, 2, 2), (2,)]


def test_simple_root_has_no_split():
    with pytest.raises(SimpleRoot):
        costandard_split(SD, SD.simple_roots[0].weight)


@pytest.mark.parametrize("inst", SMALL, ids=str)
def test_pairing_closed_forms(inst):
    sd = make(*inst)
    for w, _ in dominant_lyndon(sd):
        x = q_bracketing(sd, w)
        assert pair_tw(sd, x, x) == twisted_pairing_closed(sd, w)


@pytest.mark.parametrize("inst", SMALL, ids=str)
def test_lyndon_suite_small(inst):
    sd = make(*inst)
    report = verify_lyndon(sd, build_finrep(sd))
    assert report.ok, report.failures()


def test_factorization_mismatch_is_reported(monkeypatch):
    import osprmat.lyndonpbw as lp

    sd = sdm.build("osp", 3, 2, "10")
    real = lp.theta_closed
    monkeypatch.setattr(lp, "theta_closed", lambda sd: real(sd) + kron_graded(E(sd, 1, 1), E(sd, 1, 1)))
    with pytest.raises(FactorizationMismatch):
        theta_factorized(sd, build_finrep(sd))
