"""Lyndon words, root vectors and the factorized canonical tensor.

Words are tuples of letters ``1..s`` (simple root indices).  Elements of
the free algebra are dicts ``word -> coefficient``; the concatenation
product models products of the ``e_i`` and the q-shuffle product models
the embedding into the shuffle algebra.

Root vectors are built as matrices on ``V`` by q-bracketing along the
costandard factorization of the dominant Lyndon word of each root.  The
local factors ``Theta_gamma`` are multiplied in decreasing lexicographic
order and compared against closed forms and against ``R0``.
"""

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

from . import superdata as sdm
from .exactring import ONE, Q, QINV, QRat, ZERO, exact_div, qpow
from .repn import Gen, coproduct_action, ftilde_half, qbracket
from .report import Report
from .superlinalg import E, GradedMatrix, _compose_vv, identity, kron_graded, tau

__all__ = [
    "NotLyndon",
    "SimpleRoot",
    "ClosedFormMismatch",
    "TooLong",
    "IsotropicPower",
    "FactorizationMismatch",
    "RootVectorPair",
    "word_degree",
    "word_parity",
    "shuffle",
    "shuffle_words",
    "qshuffle_commutator",
    "concat",
    "qcommutator",
    "is_lyndon",
    "canonical_factorization",
    "costandard_factorization",
    "dominant_lyndon",
    "costandard_split",
    "PN",
    "q_bracketing",
    "R_word",
    "pair_tw_bruteforce",
    "pair_tw",
    "twisted_pairing_closed",
    "pairing_J_closed",
    "pairing_J_from_tw",
    "root_vectors",
    "pair_J_power",
    "theta_local",
    "theta_local_closed",
    "theta_group",
    "theta_group_closed",
    "theta_closed",
    "theta_factorized",
    "verify_lyndon",
    "TW_GUARD",
]

TW_GUARD = 9


class NotLyndon(ValueError):
    pass


class SimpleRoot(ValueError):
    pass


class ClosedFormMismatch(AssertionError):
    pass


class TooLong(ValueError):
    pass


class IsotropicPower(ValueError):
    pass


class FactorizationMismatch(AssertionError):
    def __init__(self, message, entry=None):
        super().__init__(message)
        self.entry = entry


def _simplify(x):
    if isinstance(x, QRat) and x.is_laurent():
        return x.to_laurent()
    return x


def _sm(M):
    return M.map(_simplify)


def _sign(b):
    return -1 if b % 2 else 1


# -- words ----------------------------------------------------------------------------


def _alpha(sd, i):
    return sd.simple_roots[i - 1]


def word_degree(sd, w):
    return sd.wadd(sd.zero_weight(), *(_alpha(sd, i).weight for i in w))


def word_parity(sd, w):
    return sum(_alpha(sd, i).parity for i in w) % 2


def _add(acc, w, c):
    v = acc.get(w)
    v = c if v is None else v + c
    if v:
        acc[w] = v
    else:
        acc.pop(w, None)


def shuffle_words(sd, u, v):
    """q-shuffle product of two words, as a dict ``word -> coefficient``."""
    return dict(_shuffle_cached(sd, tuple(u), tuple(v)))


@lru_cache(maxsize=None)
def _shuffle_cached(sd, u, v):
    if not u:
        return ((v, ONE),)
    if not v:
        return ((u, ONE),)
    x, i = u[:-1], u[-1]
    y, j = v[:-1], v[-1]
    acc = {}
    for w, c in _shuffle_cached(sd, x, v):
        _add(acc, w + (i,), c)
    aj = _alpha(sd, j)
    coeff = qpow(-sd.pair(word_degree(sd, u), aj.weight)) * _sign(word_parity(sd, u) * aj.parity)
    for w, c in _shuffle_cached(sd, u, y):
        _add(acc, w + (j,), c * coeff)
    return tuple(acc.items())


def shuffle(sd, x, y):
    """Bilinear q-shuffle product of free-algebra elements."""
    acc = {}
    for u, a in x.items():
        for v, b in y.items():
            for w, c in _shuffle_cached(sd, u, v):
                _add(acc, w, a * b * c)
    return acc


def concat(x, y):
    acc = {}
    for u, a in x.items():
        for v, b in y.items():
            _add(acc, u + v, a * b)
    return acc


def _elem_degree(sd, x):
    w = next(iter(x))
    return word_degree(sd, w), word_parity(sd, w)


def _scale(x, c):
    return {w: v * c for w, v in x.items() if v * c}


def _sub(x, y):
    acc = dict(x)
    for w, c in y.items():
        _add(acc, w, -c)
    return acc


def _commutator(sd, x, y, product):
    (dx, px), (dy, py) = _elem_degree(sd, x), _elem_degree(sd, y)
    c = qpow(sd.pair(dx, dy)) * _sign(px * py)
    return _sub(product(x, y), _scale(product(y, x), c))


def qcommutator(sd, x, y):
    """``[x, y]_q`` for the concatenation product."""
    return _commutator(sd, x, y, concat)


def qshuffle_commutator(sd, x, y):
    """``x ⋄ y - (-1)^{p p} q^{(deg, deg)} y ⋄ x``."""
    return _commutator(sd, x, y, lambda a, b: shuffle(sd, a, b))


def is_lyndon(w):
    w = tuple(w)
    return bool(w) and all(w < w[k:] for k in range(1, len(w)))


def canonical_factorization(w):
    """Non-increasing Lyndon factors (Duval's algorithm)."""
    w = tuple(w)
    out = []
    i, n = 0, len(w)
    while i < n:
        j, k = i + 1, i
        while j < n and w[k] <= w[j]:
            k = i if w[k] < w[j] else k + 1
            j += 1
        while i <= k:
            out.append(w[i : i + j - k])
            i += j - k
    return out


def costandard_factorization(l):
    """``(l1, l2)`` with ``l1`` the longest proper Lyndon prefix."""
    l = tuple(l)
    if len(l) < 2 or not is_lyndon(l):
        raise NotLyndon(f"{list(l)} is not a Lyndon word of length >= 2")
    for k in range(len(l) - 1, 0, -1):
        if is_lyndon(l[:k]):
            return l[:k], l[k:]
    raise NotLyndon(str(l))  # unreachable: single letters are Lyndon


# -- dominant Lyndon words ----------------------------------------------------------


def _r(a, b):
    """Letters ``a, a+1, ..., b`` (empty when ``a > b``)."""
    return tuple(range(a, b + 1))


def _rdown(a, b):
    """Letters ``a, a-1, ..., b``."""
    return tuple(range(a, b - 1, -1))


def _dominant_words(sd):
    s = sd.s
    tag = sd.case_tag
    words = []
    if not sd.is_osp:
        return [_r(i, j) for i in range(1, s + 1) for j in range(i, s + 1)]
    if tag == sdm.ODD_M:
        words += [_r(i, j) for i in range(1, s + 1) for j in range(i, s + 1)]
        words += [_r(i, s) + _rdown(s, j) for i in range(1, s + 1) for j in range(i + 1, s + 1)]
    elif tag == sdm.FORK:
        words += [_r(i, j) for i in range(1, s) for j in range(i, s)]
        # i = s-1 yields the single letter [s]
        words += [_r(i, s - 2) + (s,) for i in range(1, s)]
        words += [_r(i, s - 2) + (s,) + _rdown(s - 1, j) for i in range(1, s) for j in range(i + 1, s)]
        for i in range(1, s):
            if word_parity(sd, _r(i, s - 1)) == 1:
                words.append(_r(i, s - 1) + _r(i, s - 2) + (s,))
    else:
        words += [_r(i, j) for i in range(1, s + 1) for j in range(i, s + 1)]
        words += [_r(i, s) + _rdown(s - 1, j) for i in range(1, s + 1) for j in range(i + 1, s)]
        for i in range(1, s):
            if word_parity(sd, _r(i, s - 1)) == 0:
                words.append(_r(i, s - 1) + _r(i, s - 1) + (s,))
    return words


def dominant_lyndon(sd):
    """Dominant Lyndon words with their degrees, in increasing lexicographic order."""

    def compute():
        words = sorted(_dominant_words(sd))
        return [(w, word_degree(sd, w)) for w in words]

    return sd._cached("dominant_lyndon", compute)


def _lyndon_of(sd):
    return sd._cached("lyndon_of", lambda: {d: w for w, d in dominant_lyndon(sd)})


def _split_table(sd):
    """Explicit ``gamma -> (alpha, beta)`` tables, built from root formulas."""
    s = sd.s
    A = [None] + [r.weight for r in sd.simple_roots]
    zero = sd.zero_weight()

    def gam(i, j):
        return sd.wadd(zero, *(A[k] for k in range(i, j + 1)))

    table = {}
    top = s if (not sd.is_osp or sd.case_tag != sdm.FORK) else s - 1
    for i in range(1, top + 1):
        for j in range(i + 1, top + 1):
            table[gam(i, j)] = (gam(i, j - 1), A[j])
    if not sd.is_osp:
        return table
    if sd.case_tag == sdm.ODD_M:

        def beta(i, j):
            return sd.wadd(gam(i, j - 1), sd.wscale(2, gam(j, s)))

        for i in range(1, s):
            table[beta(i, s)] = (gam(i, s), A[s])
            for j in range(i + 1, s):
                table[beta(i, j)] = (beta(i, j + 1), A[j])
    elif sd.case_tag == sdm.FORK:

        def beta(i, j):
            if j == s:
                return sd.wadd(gam(i, s - 2), A[s])
            if j == s - 1:
                return gam(i, s)
            return sd.wadd(gam(i, j - 1), sd.wscale(2, gam(j, s - 2)), A[s - 1], A[s])

        for i in range(1, s - 1):
            table[beta(i, s)] = (gam(i, s - 2), A[s])
        for i in range(1, s):
            for j in range(i + 1, s):
                table[beta(i, j)] = (beta(i, j + 1), A[j])
            if word_parity(sd, _r(i, s - 1)) == 1:
                table[sd.wadd(gam(i, s - 1), beta(i, s))] = (gam(i, s - 1), beta(i, s))
    else:

        def beta(i, j):
            return sd.wadd(gam(i, j - 1), sd.wscale(2, gam(j, s - 1)), A[s])

        for i in range(1, s - 1):
            table[beta(i, s - 1)] = (gam(i, s), A[s - 1])
            for j in range(i + 1, s - 1):
                table[beta(i, j)] = (beta(i, j + 1), A[j])
        for i in range(1, s):
            if word_parity(sd, _r(i, s - 1)) == 0:
                table[beta(i, i)] = (gam(i, s - 1), gam(i, s))
    return table


def costandard_split(sd, gamma):
    """``(alpha, beta)`` for a non-simple root from the explicit tables."""
    gamma = tuple(gamma)
    if any(r.weight == gamma for r in sd.simple_roots):
        raise SimpleRoot(f"{sd.weight_str(gamma)} is simple")
    table = sd._cached("split_table", lambda: _split_table(sd))
    if gamma not in table:
        raise KeyError(f"{sd.weight_str(gamma)} is not a reduced positive root")
    return table[gamma]


# -- P and N ------------------------------------------------------------------------


def PN(sd, letters):
    """``(P, N)`` for a root written as a sequence of simple root indices."""
    letters = list(letters)
    P, Nv = 0, 0
    for a in range(len(letters)):
        for b in range(a + 1, len(letters)):
            ra, rb = _alpha(sd, letters[a]), _alpha(sd, letters[b])
            P += ra.parity * rb.parity
            Nv += sd.pair(ra.weight, rb.weight)
    return P % 2, sdm._tidy(Fraction(Nv))


def _height(sd, gamma):
    return sum(sd.simple_coords(gamma))


# -- twisted pairing ------------------------------------------------------------------


def q_bracketing(sd, l):
    """``[l]`` in the free algebra (concatenation product), for a Lyndon word ``l``."""
    l = tuple(l)
    if len(l) == 1:
        return {l: ONE}
    a, b = costandard_factorization(l)
    return qcommutator(sd, q_bracketing(sd, a), q_bracketing(sd, b))


def R_word(sd, l):
    """``R_l``, the image of ``[l]`` in the shuffle algebra."""
    l = tuple(l)
    if len(l) == 1:
        return {l: ONE}
    a, b = costandard_factorization(l)
    return qshuffle_commutator(sd, R_word(sd, a), R_word(sd, b))


def pair_tw_bruteforce(sd, x, y, guard=TW_GUARD):
    """Twisted pairing of the monomials ``e_x`` and ``e_y`` by summing over permutations."""
    x, y = tuple(x), tuple(y)
    if len(x) != len(y):
        return ZERO
    d = len(x)
    if d > guard:
        raise TooLong(f"length {d} exceeds the permutation guard {guard}")
    weights = [_alpha(sd, j) for j in y]
    total = ZERO
    # sigma(k) = position in x matched by letter k of y
    sigma = [None] * d
    used = [False] * d

    def rec(k):
        nonlocal total
        if k == d:
            term = ONE
            for a in range(d):
                for b in range(a + 1, d):
                    if sigma[a] > sigma[b]:
                        ra, rb = weights[a], weights[b]
                        term = term * qpow(-sd.pair(ra.weight, rb.weight)) * _sign(ra.parity * rb.parity)
            total = total + term
            return
        for pos in range(d):
            if not used[pos] and x[pos] == y[k]:
                used[pos] = True
                sigma[k] = pos
                rec(k + 1)
                used[pos] = False

    rec(0)
    return total


def pair_tw(sd, X, Y):
    """Bilinear extension of :func:`pair_tw_bruteforce` to free-algebra elements."""
    total = ZERO
    for u, a in X.items():
        for v, b in Y.items():
            p = pair_tw_bruteforce(sd, u, v)
            if p:
                total = total + a * b * p
    return total


def _pi(sd, i, j):
    """Product of ``(alpha_k, alpha_{k+1})`` for ``k = i..j``."""
    out = 1
    for k in range(i, j + 1):
        out *= sd.pair(_alpha(sd, k).weight, _alpha(sd, k + 1).weight)
    return out


def twisted_pairing_closed(sd, l):
    """Closed form of ``(R_l, R_l)^tw`` for a dominant Lyndon word."""
    l = tuple(l)
    s = sd.s
    qq = Q - QINV
    q2 = qpow(2) - qpow(-2)
    _, Nv = PN(sd, l)
    qN = qpow(Nv)
    if len(l) == 1:
        return ONE
    i = l[0]
    tag = sd.case_tag if sd.is_osp else None
    if l == _r(i, l[-1]) and (tag != sdm.FORK or l[-1] <= s - 1):
        j = l[-1]
        if tag == sdm.NOFORK and j == s:
            return qq ** (s - i - 1) * q2 * qN * (_pi(sd, i, s - 1) * Fraction(1, 2))
        return qq ** (j - i) * qN * _pi(sd, i, j - 1)
    if tag == sdm.ODD_M:
        j = l[-1]
        return qq ** (2 * s + 1 - i - j) * qN * (_sign(word_parity(sd, _r(j, s))) * _pi(sd, i, j - 2))
    if tag == sdm.FORK:
        if l == _r(i, s - 2) + (s,):
            return qq ** (s - i - 1) * qN * _pi(sd, i, s - 2)
        if l == _r(i, s - 1) + _r(i, s - 2) + (s,):
            return -(qq ** (2 * s - 2 * i - 2)) * q2 * qN
        j = l[-1]
        return -(qq ** (2 * s - 1 - i - j)) * qN * _pi(sd, i, j - 1)
    if l == _r(i, s - 1) + _r(i, s - 1) + (s,):
        return qq ** (2 * s - 2 * i - 2) * q2 * q2 * qN
    j = l[-1]
    return qq ** (2 * s - 1 - i - j) * q2 * qN * _pi(sd, i, j - 1)


def pairing_J_from_tw(sd, gamma, tw):
    """``(f_gamma, e_gamma)_J`` from the twisted self-pairing of ``e_gamma``."""
    word = _lyndon_of(sd)[tuple(gamma)]
    ht = len(word)
    _, Nv = PN(sd, word)
    val = QRat(tw.bar() * qpow(Nv) * _sign(ht - 1), (QINV - Q) ** ht)
    return _simplify(val)


# -- root indices and closed forms on V ---------------------------------------------------


def _root_kind(sd, gamma):
    """Classify a reduced positive root by indices.

    Returns ``("diff", i, j)`` for ``eps_i - eps_j`` with ``i < j < i'``
    (``j > s`` encodes ``eps_i + eps_{j'}``) or ``("double", i)``.
    """
    gamma = tuple(gamma)
    N = sd.N
    for i in range(1, N + 1):
        hi = sd.prime(i) if sd.is_osp else N + 1
        for j in range(i + 1, hi):
            if sd.wsub(sd.eps(i), sd.eps(j)) == gamma:
                return ("diff", i, j)
    if sd.is_osp:
        for i in range(1, sd.N // 2 + 1):
            if sd.wscale(2, sd.eps(i)) == gamma:
                return ("double", i)
    raise KeyError(gamma)


def _psum(sd, a, b):
    """Sum of parities of ``v_a, ..., v_b``."""
    return sum(sd.par(k) for k in range(a, b + 1)) % 2


def qe(sd, i, j):
    """q-deformed ``e_ij`` on ``V``."""
    if not sd.is_osp:
        return E(sd, i, j)
    sign = _sign(sd.par(i) * (sd.par(i) + sd.par(j)))
    c = (
        qpow(-sd.rho_pair(sd.wsub(sd.eps(i), sd.eps(j))) + Fraction(sd.eps_pair(i, i) + sd.eps_pair(j, j), 2))
        * (sign * sd.th(i) * sd.th(j))
    )
    return E(sd, i, j) - E(sd, sd.prime(j), sd.prime(i), c)


def qf(sd, i, j):
    """q-deformed ``f_ij`` on ``V``."""
    if not sd.is_osp:
        return E(sd, j, i)
    sign = _sign(sd.par(j) * (sd.par(i) + sd.par(j)))
    c = (
        qpow(sd.rho_pair(sd.wsub(sd.eps(i), sd.eps(j))) - Fraction(sd.eps_pair(i, i) + sd.eps_pair(j, j), 2))
        * (sign * sd.th(i) * sd.th(j))
    )
    return E(sd, j, i) - E(sd, sd.prime(i), sd.prime(j), c)


def _closed_root_vector(sd, gamma):
    """Closed ``(e_gamma, f_gamma)`` on ``V``, or None where no formula is stated."""
    kind = _root_kind(sd, gamma)
    s = sd.s
    tag = sd.case_tag
    if kind[0] == "diff":
        _, i, j = kind
        plus = sd.is_osp and j > s + (1 if tag == sdm.ODD_M else 0)
        if not plus:
            return qe(sd, i, j), qf(sd, i, j).scale(_sign(_psum(sd, i, j - 1)))
        jj = sd.prime(j)
        pe, pf = 1, 1
        for k in range(jj, s + 1):
            pk, pk1 = sd.par(k), sd.par(k + 1)
            pe *= -_sign(pk * (pk + pk1))
            pf *= -_sign(pk1 * (pk + pk1))
        anchor = s + 1 if tag == sdm.ODD_M else s
        th = sd.th(jj) * sd.th(anchor)
        ce = th * pe
        cf = th * pf * _sign(_psum(sd, i, jj - 1))
        if tag != sdm.ODD_M:
            ce = -ce
            if tag == sdm.FORK:
                cf = -cf
        f = qf(sd, i, j).scale(cf)
        if tag == sdm.NOFORK:
            f = f.scale(Q + QINV)
        return qe(sd, i, j).scale(ce), f
    _, i = kind
    if tag == sdm.NOFORK and i == s:
        return None
    th = sd.th(i) * sd.th(s)
    r = sd.rho_pair(sd.eps(i))
    e = E(sd, i, sd.prime(i), qpow(-r) * (1 + qpow(-2)) * th)
    f = E(sd, sd.prime(i), i, qpow(r) * (1 + qpow(2)) * (-th))
    if tag == sdm.NOFORK:
        f = f.scale(Q + QINV)
    return e, f


def pairing_J_closed(sd, gamma):
    """``(f_gamma, e_gamma)_J`` from the closed tables."""
    kind = _root_kind(sd, gamma)
    s = sd.s
    tag = sd.case_tag if sd.is_osp else None
    base = QRat(ONE, QINV - Q)
    ratio2 = QRat(qpow(-2) - qpow(2), (QINV - Q) ** 2)
    if kind[0] == "diff":
        _, i, j = kind
        plus = sd.is_osp and j > s + (1 if tag == sdm.ODD_M else 0)
        if not plus:
            return _simplify(base * _sign(_psum(sd, i + 1, j - 1)))
        jj = sd.prime(j)
        sign = _sign(_psum(sd, i + 1, jj))
        return _simplify((ratio2 if tag == sdm.NOFORK else base) * sign)
    _, i = kind
    if tag == sdm.FORK:
        return _simplify(ratio2)
    if i == s:
        return _simplify(base)
    return _simplify(QRat((qpow(-2) - qpow(2)) ** 2, (QINV - Q) ** 3))


# -- root vectors -----------------------------------------------------------------------


@dataclass
class RootVectorPair:
    gamma: tuple
    e_mat: GradedMatrix
    f_mat: GradedMatrix
    parity: int
    pairing1: object
    lyndon: tuple
    split: tuple = None
    label: str = ""

    @property
    def norm(self):
        return self._norm

    def isotropic(self, sd):
        return self.parity == 1 and sd.pair(self.gamma, self.gamma) == 0


def _root_label(sd, gamma):
    kind = _root_kind(sd, gamma)
    if kind[0] == "double":
        return f"2e{kind[1]}"
    _, i, j = kind
    if not sd.is_osp:
        return f"e{i}-e{j}"
    if sd.case_tag == sdm.ODD_M and j == sd.s + 1:
        return f"e{i}"
    if j > sd.s:
        return f"e{i}+e{sd.prime(j)}"
    return f"e{i}-e{j}"


def root_vectors(sd, rep, check=True):
    """Root vectors on ``V`` in increasing lexicographic order of their Lyndon words."""

    def compute():
        gens = {}
        out = []
        for word, gamma in sorted(dominant_lyndon(sd), key=lambda wd: (len(wd[0]), wd[0])):
            if len(word) == 1:
                e, f = rep.gen(f"e{word[0]}"), rep.gen(f"f{word[0]}")
                split = None
            else:
                a, b = costandard_split(sd, gamma)
                split = (a, b)
                ea, fa = gens[a]
                eb, fb = gens[b]
                e = qbracket(sd, ea, eb)
                sign = _sign(ea.parity * eb.parity)
                fmat = fb.mat @ fa.mat - (fa.mat @ fb.mat).scale(qpow(-sd.pair(a, b)) * sign)
                f = Gen(fmat, e.parity, tuple(-c for c in gamma))
            gens[gamma] = (e, f)
            out.append(
                RootVectorPair(
                    gamma=gamma,
                    e_mat=e.mat,
                    f_mat=f.mat,
                    parity=e.parity,
                    pairing1=pairing_J_closed(sd, gamma),
                    lyndon=word,
                    split=split,
                    label=_root_label(sd, gamma),
                )
            )
        out.sort(key=lambda rv: rv.lyndon)
        return out

    rvs = rep._cache.get("root_vectors")
    if rvs is None:
        rvs = compute()
        rep._cache["root_vectors"] = rvs
    if check:
        for rv in rvs:
            closed = _closed_root_vector(sd, rv.gamma)
            if closed is None:
                continue
            e, f = closed
            if not (rv.e_mat - e).is_zero():
                raise ClosedFormMismatch(f"e_{rv.label} differs from its closed form")
            if not (rv.f_mat - f).is_zero():
                raise ClosedFormMismatch(f"f_{rv.label} differs from its closed form")
    return rvs


def omega_f_matrix(sd, rep, gamma):
    """``omega(f_gamma)`` on ``V``: the f-recursion with ``f_i`` replaced by ``e_i``."""
    word = _lyndon_of(sd)[tuple(gamma)]
    if len(word) == 1:
        return rep.gen(f"e{word[0]}").mat
    a, b = costandard_split(sd, gamma)
    pa, pb = sd.root_parity(a), sd.root_parity(b)
    A, B = omega_f_matrix(sd, rep, a), omega_f_matrix(sd, rep, b)
    return B @ A - (A @ B).scale(qpow(-sd.pair(a, b)) * _sign(pa * pb))


# -- local operators ------------------------------------------------------------------


def _C(sd, gamma, parity, k):
    x = qpow(-sd.pair(gamma, gamma)) * _sign(parity)
    out = ONE
    for t in range(1, k + 1):
        out = out * exact_div(ONE - x**t, ONE - x)
    return out


def pair_J_power(sd, rv, k):
    """``(f_gamma^k, e_gamma^k)_J``."""
    if k < 0:
        raise ValueError("k must be non-negative")
    if k >= 2 and rv.isotropic(sd):
        raise IsotropicPower(f"{rv.label} is odd isotropic; its powers vanish")
    if k == 0:
        return ONE
    c = _C(sd, rv.gamma, rv.parity, k).bar() * _sign(k * (k - 1) // 2 * rv.parity)
    return _simplify(QRat.lift(rv.pairing1) ** k * c)


def theta_local(sd, rv, max_k=8):
    """``sum_k f^k ⊗ e^k / (f^k, e^k)_J`` on ``V⊗V``."""
    out = identity(sd, "VV")
    fk, ek = identity(sd, "V"), identity(sd, "V")
    for k in range(1, max_k + 1):
        fk, ek = fk @ rv.f_mat, ek @ rv.e_mat
        if fk.is_zero() or ek.is_zero():
            break
        c = _simplify(QRat.lift(ONE) / QRat.lift(pair_J_power(sd, rv, k)))
        out = out + kron_graded(fk, ek).scale(c)
    else:
        raise ArithmeticError(f"powers of e_{rv.label} did not vanish")
    return _sm(out)


def theta_local_closed(sd, rv):
    """Closed form of the local factor on ``V⊗V``."""
    I = identity(sd, "VV")
    qq = Q - QINV
    kind = _root_kind(sd, rv.gamma)
    if not sd.is_osp:
        _, i, j = kind
        return I - kron_graded(E(sd, j, i), E(sd, i, j)).scale(qq * sd.sgn(i))
    if kind[0] == "diff":
        _, i, j = kind
        out = I - kron_graded(qf(sd, i, j), qe(sd, i, j)).scale(qq * sd.sgn(i))
        if sd.case_tag == sdm.ODD_M and j == sd.s + 1:
            c = qq * (ONE - qpow(-sd.eps_pair(i, i)) * sd.sgn(i))
            out = out + kron_graded(E(sd, sd.prime(i), i), E(sd, i, sd.prime(i))).scale(c)
        return out
    _, i = kind
    c = qq * (QINV - qpow(-sd.eps_pair(i, i)) * sd.sgn(i))
    return I + kron_graded(E(sd, sd.prime(i), i), E(sd, i, sd.prime(i))).scale(c)


def _group_roots(sd, i):
    """Roots of the grouped factor ``Theta_i``, listed left to right."""
    s = sd.s
    if not sd.is_osp:
        return [sd.wsub(sd.eps(i), sd.eps(j)) for j in range(sd.N, i, -1)]
    plus = [sd.wadd(sd.eps(i), sd.eps(j)) for j in range(i + 1, s + 1)]
    if sd.case_tag == sdm.ODD_M:
        mid = [sd.eps(i)]
    elif sd.par(i):
        mid = [sd.wscale(2, sd.eps(i))]
    else:
        mid = []
    minus = [sd.wsub(sd.eps(i), sd.eps(j)) for j in range(s, i, -1)]
    return plus + mid + minus


def theta_group(sd, rep, i):
    """Ordered product of the local factors making up ``Theta_i``."""
    local = {rv.gamma: rv for rv in root_vectors(sd, rep, check=False)}
    out = identity(sd, "VV")
    for g in _group_roots(sd, i):
        out = out @ theta_local(sd, local[g])
    return _sm(out)


def theta_group_closed(sd, i):
    I = identity(sd, "VV")
    qq = Q - QINV
    if not sd.is_osp:
        acc = I
        for j in range(i + 1, sd.N + 1):
            acc = acc - kron_graded(E(sd, j, i), E(sd, i, j)).scale(qq * sd.sgn(i))
        return acc
    acc = I
    for j in range(i + 1, sd.prime(i)):
        acc = acc - kron_graded(qf(sd, i, j), qe(sd, i, j)).scale(qq * sd.sgn(i))
    c = qq * qpow(-sd.eps_pair(i, i)) * (qpow(2 * sd.rho_pair(sd.eps(i))) - sd.sgn(i))
    return acc + kron_graded(E(sd, sd.prime(i), i), E(sd, i, sd.prime(i))).scale(c)


def theta_closed(sd):
    """Closed form of the canonical tensor on ``V⊗V``."""
    N = sd.N
    qq = Q - QINV
    terms = [(a, a, b, b, ONE) for a in range(1, N + 1) for b in range(1, N + 1)]
    for i in range(1, N + 1):
        for j in range(1, i):
            if not sd.is_osp:
                # A-type: sum over j < i of (-1)^{j} E_ij ⊗ E_ji
                terms.append((i, j, j, i, -qq * sd.sgn(j)))
                continue
            terms.append((i, j, j, i, -qq * sd.sgn(j) * qpow(sd.eps_pair(i, j))))
            sign = _sign(sd.par(j) * (sd.par(i) + sd.par(j)))
            c = qpow(
                -sd.rho_pair(sd.wsub(sd.eps(i), sd.eps(j))) - Fraction(sd.eps_pair(i, i) + sd.eps_pair(j, j), 2)
            )
            terms.append((i, j, sd.prime(i), sd.prime(j), qq * sd.sgn(j) * sign * sd.th(i) * sd.th(j) * c))
    return _compose_vv(sd, terms)


def _first_diff(A, B):
    D = A - B
    if D.is_zero():
        return None
    (r, c), v = next(iter(D.items()))
    return (r, c, str(A.get(r, c)), str(B.get(r, c)))


def theta_factorized(sd, rep, check=("closed", "rmatrix")):
    """Ordered product of local factors in decreasing lexicographic order."""
    rvs = root_vectors(sd, rep)
    theta = identity(sd, "VV")
    for rv in reversed(rvs):
        theta = theta @ theta_local(sd, rv)
    theta = _sm(theta)
    if "closed" in check:
        d = _first_diff(theta, theta_closed(sd))
        if d:
            raise FactorizationMismatch("ordered product differs from the closed form", d)
    if "rmatrix" in check:
        from .rfinite import build_R0

        fh, t = ftilde_half(sd), tau(sd)
        d = _first_diff(_sm(t @ fh @ theta @ fh @ t), build_R0(sd))
        if d:
            raise FactorizationMismatch("tau f^1/2 Theta f^1/2 tau differs from R0", d)
    return theta


# -- verification suite -----------------------------------------------------------------


def verify_lyndon(sd, rep, report=None, tw_max_len=6):
    """Run the Lyndon and factorization checks on one instance."""
    if report is None:
        report = Report(sd.label(), "lyndon")
    lst = dominant_lyndon(sd)
    degs = sorted(d for _, d in lst)
    red = sorted(r.weight for r in sd.reduced_positive_roots)
    report.add("degree-bijection", degs == red and len(set(degs)) == len(degs), "degree-bijection")
    report.add("all-lyndon", all(is_lyndon(w) for w, _ in lst), "lyndon-words")
    for w, gamma in lst:
        if len(w) < 2:
            continue
        a, b = costandard_factorization(w)
        tab = costandard_split(sd, gamma)
        report.add(f"split[{w}]", (word_degree(sd, a), word_degree(sd, b)) == tab, "costandard-split")
    try:
        rvs = root_vectors(sd, rep)
        report.add("root-vectors-closed", True, "root-vectors")
    except ClosedFormMismatch as exc:
        report.add("root-vectors-closed", False, "root-vectors", str(exc))
        return report
    for rv in rvs:
        ht = len(rv.lyndon)
        P, Nv = PN(sd, rv.lyndon)
        om = omega_f_matrix(sd, rep, rv.gamma)
        want = rv.e_mat.scale(qpow(-Nv) * _sign(ht - 1 + P))
        report.zero(f"omega-f[{rv.label}]", om - want, "omega-f")
        if ht <= tw_max_len:
            tw = pair_tw(sd, q_bracketing(sd, rv.lyndon), q_bracketing(sd, rv.lyndon))
            report.zero(f"tw-closed[{rv.label}]", tw - twisted_pairing_closed(sd, rv.lyndon), "twisted-pairing")
            j = pairing_J_from_tw(sd, rv.gamma, tw)
            report.zero(f"J-from-tw[{rv.label}]", QRat.lift(j) - QRat.lift(rv.pairing1), "J-pairing")
        local = theta_local(sd, rv)
        report.zero(f"theta-local[{rv.label}]", local - theta_local_closed(sd, rv), "local-theta")
    s = sd.s
    for i in range(1, (s if sd.is_osp else s) + 1):
        report.zero(f"theta-group[{i}]", theta_group(sd, rep, i) - theta_group_closed(sd, i), "grouped-theta")
    try:
        theta = theta_factorized(sd, rep)
        report.add("theta-factorized", True, "theta-factorization")
    except FactorizationMismatch as exc:
        report.add("theta-factorized", False, "theta-factorization", f"{exc}: {exc.entry}")
        return report
    grouped = identity(sd, "VV")
    for i in range(s, 0, -1):
        grouped = grouped @ theta_group_closed(sd, i)
    report.zero("theta-grouped-product", _sm(grouped) - theta, "grouped-theta")
    ft = ftilde_half(sd, 2)
    for name in rep.generator_names():
        lhs = coproduct_action(rep, name, "ΔJ") @ theta @ ft
        rhs = theta @ ft @ coproduct_action(rep, name, "ΔJop")
        report.zero(f"orthogonality[{name}]", _sm(lhs - rhs), "theta-intertwiner")
    return report
