"""Combinatorial data of the superspace ``V = C^{m|n}``.

Covers the parity sequence, the involution ``i -> i' = N+1-i``, the sign
sequence ``theta``, the bilinear form on weights, positive and reduced
positive roots, simple roots, the Cartan matrix and the Weyl vector.

Weights are integer tuples in units of 1/2.  For the orthosymplectic
family the coordinates are ``eps_1..eps_s``; for the A-type family they
are ``eps_1..eps_N``.  Indices of basis vectors are 1-based throughout.
"""

from dataclasses import dataclass, field
from fractions import Fraction

__all__ = [
    "SuperDataError",
    "BadParityLength",
    "ThetaViolation",
    "OddN_for_osp",
    "SuperData",
    "Root",
    "build",
    "parse_parity",
    "admissible_parities",
]


class SuperDataError(ValueError):
    pass


class BadParityLength(SuperDataError):
    pass


class ThetaViolation(SuperDataError):
    pass


class OddN_for_osp(SuperDataError):  # noqa: N801 - public error name
    pass


OSP = "osp"
GLA = "glA"
ODD_M = "OddM"
FORK = "EvenM_sEven"
NOFORK = "EvenM_sOdd"


def _tidy(x):
    x = Fraction(x)
    return x.numerator if x.denominator == 1 else x


@dataclass(frozen=True)
class Root:
    """A root with its weight (half units) and parity."""

    weight: tuple
    parity: int
    label: str = ""

    def __repr__(self):
        return f"Root({self.label or self.weight}, p={self.parity})"


def parse_parity(parity):
    """Accept ``"101"``, ``[1, 0, 1]`` or a tuple and return a tuple of 0/1."""
    if isinstance(parity, str):
        parity = [int(c) for c in parity.strip() if c in "01"]
    out = tuple(int(p) for p in parity)
    if any(p not in (0, 1) for p in out):
        raise BadParityLength(f"parity entries must be 0 or 1, got {parity!r}")
    return out


def admissible_parities(family, m, n):
    """All parity sequences accepted by :func:`build` for ``(m, n)``."""
    from itertools import combinations

    if family == OSP:
        s = (m + n) // 2
        k = n // 2
    else:
        s = m + n
        k = n
    out = []
    for ones in combinations(range(s), k):
        out.append(tuple(1 if i in ones else 0 for i in range(s)))
    return out


@dataclass(frozen=True, eq=False)
class SuperData:
    family: str
    m: int
    n: int
    parity: tuple  # length N, index i-1 holds the parity of v_i
    theta: tuple  # length N
    case_tag: str = None
    _cache: dict = field(default_factory=dict, repr=False, compare=False)

    # -- basic sizes ------------------------------------------------------
    @property
    def N(self):
        return self.m + self.n

    @property
    def s(self):
        """Number of simple roots (``floor(N/2)`` for osp, ``N-1`` for A-type)."""
        return self.N // 2 if self.family == OSP else self.N - 1

    @property
    def is_osp(self):
        return self.family == OSP

    @property
    def wdim(self):
        """Length of weight vectors."""
        return self.N // 2 if self.is_osp else self.N

    def key(self):
        return (self.family, self.m, self.n, self.parity, self.theta)

    def __eq__(self, other):
        return isinstance(other, SuperData) and self.key() == other.key()

    def __hash__(self):
        return hash(self.key())

    def label(self):
        head = "osp" if self.is_osp else "gl"
        ps = "".join(str(p) for p in self.parity[: self.N // 2 if self.is_osp else self.N])
        return f"{head}({self.m}|{self.n})[{ps}]"

    def to_json(self):
        return {
            "family": self.family,
            "m": self.m,
            "n": self.n,
            "parity": list(self.parity),
            "theta": list(self.theta),
        }

    # -- index helpers ----------------------------------------------------
    def prime(self, i):
        return self.N + 1 - i

    def par(self, i):
        return self.parity[i - 1]

    def sgn(self, i):
        return -1 if self.parity[i - 1] else 1

    def th(self, i):
        return self.theta[i - 1]

    # -- weights ------------------------------------------------------------
    def zero_weight(self):
        return (0,) * self.wdim

    def eps(self, i):
        """Weight of ``v_i`` in half units."""
        w = [0] * self.wdim
        if not self.is_osp:
            w[i - 1] = 2
        else:
            s = self.N // 2
            if i <= s:
                w[i - 1] = 2
            elif self.prime(i) <= s:
                w[self.prime(i) - 1] = -2
        return tuple(w)

    @staticmethod
    def wadd(*ws):
        return tuple(sum(c) for c in zip(*ws))

    @staticmethod
    def wscale(k, w):
        return tuple(k * c for c in w)

    def wsub(self, a, b):
        return tuple(x - y for x, y in zip(a, b))

    def pair(self, mu, nu):
        """Bilinear form on weights given in half units."""
        total = 0
        for k, (a, b) in enumerate(zip(mu, nu)):
            if a and b:
                total += (-a * b) if self.parity[k] else a * b
        return _tidy(Fraction(total, 4))

    def eps_pair(self, i, j):
        return self.pair(self.eps(i), self.eps(j))

    def weight_str(self, w):
        parts = []
        for k, c in enumerate(w):
            if c:
                coef = Fraction(c, 2)
                if coef == 1:
                    parts.append(f"+e{k + 1}")
                elif coef == -1:
                    parts.append(f"-e{k + 1}")
                else:
                    parts.append(f"{'+' if coef > 0 else ''}{coef}e{k + 1}")
        s = "".join(parts)
        return s[1:] if s.startswith("+") else (s or "0")

    # -- roots --------------------------------------------------------------
    def _cached(self, name, fn):
        if name not in self._cache:
            self._cache[name] = fn()
        return self._cache[name]

    @property
    def positive_roots(self):
        return self._cached("pos", self._positive_roots)

    def _positive_roots(self):
        out = []
        N = self.N
        if not self.is_osp:
            for a in range(1, N + 1):
                for b in range(a + 1, N + 1):
                    w = self.wsub(self.eps(a), self.eps(b))
                    out.append(Root(w, (self.par(a) + self.par(b)) % 2, f"e{a}-e{b}"))
            return out
        for a in range(1, N + 1):
            for b in range(a + 1, self.prime(a)):
                w = self.wsub(self.eps(a), self.eps(b))
                out.append(Root(w, (self.par(a) + self.par(b)) % 2, f"e{a}-e{b}"))
        for a in range(1, N // 2 + 1):
            if self.par(a):
                out.append(Root(self.wscale(2, self.eps(a)), 0, f"2e{a}"))
        return out

    @property
    def reduced_positive_roots(self):
        return self._cached("red", self._reduced)

    def _reduced(self):
        weights = {r.weight for r in self.positive_roots}
        out = []
        for r in self.positive_roots:
            if all(c % 2 == 0 for c in r.weight) and tuple(c // 2 for c in r.weight) in weights:
                continue
            out.append(r)
        return out

    def root_parity(self, w):
        for r in self.positive_roots:
            if r.weight == w:
                return r.parity
        for r in self.positive_roots:
            if r.weight == tuple(-c for c in w):
                return r.parity
        raise KeyError(f"{w} is not a root")

    @property
    def rho(self):
        """Graded half-sum of positive roots, in half units."""

        def compute():
            acc = [0] * self.wdim
            for r in self.positive_roots:
                sign = -1 if r.parity else 1
                for k, c in enumerate(r.weight):
                    acc[k] += sign * c
            # half of a sum of half-unit vectors; every coordinate is even here
            assert all(c % 2 == 0 for c in acc), acc
            return tuple(c // 2 for c in acc)

        return self._cached("rho", compute)

    def rho_pair(self, mu):
        return self.pair(self.rho, mu)

    # -- simple roots ---------------------------------------------------------
    @property
    def simple_roots(self):
        return self._cached("simple", self._simple)

    def _simple(self):
        out = []
        s = self.s
        for i in range(1, s + 1):
            if i < s or not self.is_osp:
                w = self.wsub(self.eps(i), self.eps(i + 1))
                p = (self.par(i) + self.par(i + 1)) % 2
            elif self.case_tag == ODD_M:
                w = self.eps(s)
                p = self.par(s)
            elif self.case_tag == FORK:
                w = self.wadd(self.eps(s - 1), self.eps(s))
                p = (self.par(s - 1) + self.par(s)) % 2
            else:
                w = self.wscale(2, self.eps(s))
                p = 0
            out.append(Root(w, p, f"a{i}"))
        return out

    @property
    def cartan(self):
        def compute():
            sr = self.simple_roots
            return tuple(tuple(self.pair(a.weight, b.weight) for b in sr) for a in sr)

        return self._cached("cartan", compute)

    # -- highest root -------------------------------------------------------
    def highest_root(self):
        """Return ``(theta, k)`` with ``theta = sum k_i alpha_i``."""
        return self._cached("theta", self._highest_root)

    def _highest_root(self):
        if self.is_osp:
            if self.par(1):
                th = self.wscale(2, self.eps(1))
            else:
                th = self.wadd(self.eps(1), self.eps(2))
        else:
            th = self.wsub(self.eps(1), self.eps(self.N))
        return th, self.simple_coords(th)

    def simple_coords(self, w):
        """Coordinates of a weight in the basis of simple roots."""
        cols = [r.weight for r in self.simple_roots]
        rows = len(w)
        ncol = len(cols)
        mat = [[Fraction(cols[j][i]) for j in range(ncol)] + [Fraction(w[i])] for i in range(rows)]
        piv_cols = []
        r = 0
        for c in range(ncol):
            p = next((i for i in range(r, rows) if mat[i][c]), None)
            if p is None:
                continue
            mat[r], mat[p] = mat[p], mat[r]
            inv = 1 / mat[r][c]
            mat[r] = [x * inv for x in mat[r]]
            for i in range(rows):
                if i != r and mat[i][c]:
                    f = mat[i][c]
                    mat[i] = [x - f * y for x, y in zip(mat[i], mat[r])]
            piv_cols.append(c)
            r += 1
        if any(mat[i][-1] for i in range(r, rows)):
            raise ValueError(f"{w} is not in the root lattice")
        coords = [0] * ncol
        for i, c in enumerate(piv_cols):
            coords[c] = _tidy(mat[i][-1])
        return tuple(coords)

    def theta_parity(self):
        th, k = self.highest_root()
        return sum(ki * r.parity for ki, r in zip(k, self.simple_roots)) % 2

    def affine_cartan_row(self):
        """``(a_00, [a_01, ..., a_0s])`` for the affine node ``alpha_0 = delta - theta``."""
        th, _ = self.highest_root()
        return self.pair(th, th), [-self.pair(th, r.weight) for r in self.simple_roots]


def build(family, m, n, parity, theta_choice=None):
    """Validate the input and return a :class:`SuperData`.

    ``parity`` lists the parities of ``v_1..v_s`` (osp, extended by the
    symmetry ``i -> i'``) or of ``v_1..v_N`` (A-type).  ``theta_choice``
    may be ``None`` (all signs ``+1`` on ``v_1..v_s``), a length-``s``
    sequence that is extended by the sign rule, or a full length-``N``
    sequence that is validated.
    """
    if family not in (OSP, GLA):
        raise SuperDataError(f"unknown family {family!r}")
    if m < 0 or n < 0:
        raise SuperDataError("m and n must be nonnegative")
    par = parse_parity(parity)
    N = m + n
    if family == OSP:
        if n % 2:
            raise OddN_for_osp(f"osp needs an even number of odd vectors, got n={n}")
        if N <= 2:
            raise SuperDataError("osp needs N > 2")
        s = N // 2
        if len(par) != s:
            raise BadParityLength(f"osp({m}|{n}) needs {s} parities, got {len(par)}")
        if sum(par) != n // 2:
            raise BadParityLength(f"parity {par} has {sum(par)} odd entries, expected {n // 2}")
        full = list(par) + ([0] if N % 2 else []) + list(reversed(par))
        if m % 2:
            tag = ODD_M
        elif par[-1] == 0:
            tag = FORK
        else:
            tag = NOFORK
        theta = _theta_osp(full, theta_choice)
        return SuperData(OSP, m, n, tuple(full), theta, tag)
    if N < 2:
        raise SuperDataError("A-type needs N >= 2")
    if len(par) != N:
        raise BadParityLength(f"A-type ({m}|{n}) needs {N} parities, got {len(par)}")
    if sum(par) != n:
        raise BadParityLength(f"parity {par} has {sum(par)} odd entries, expected {n}")
    if theta_choice is not None and any(t != 1 for t in theta_choice):
        raise ThetaViolation("A-type carries no theta signs")
    return SuperData(GLA, m, n, tuple(par), (1,) * N, None)


def _theta_osp(full, choice):
    N = len(full)
    s = N // 2
    if choice is None:
        choice = [1] * s
    choice = [int(c) for c in choice]
    if any(c not in (1, -1) for c in choice):
        raise ThetaViolation("theta signs must be +1 or -1")
    if len(choice) == s:
        th = [0] * N
        for i in range(s):
            th[i] = choice[i]
        if N % 2:
            th[s] = 1
        for i in range(s):
            j = N - 1 - i
            th[j] = th[i] if full[i] == 0 else -th[i]
    elif len(choice) == N:
        th = list(choice)
    else:
        raise ThetaViolation(f"theta needs {s} or {N} signs, got {len(choice)}")
    for i in range(N):
        j = N - 1 - i
        if full[i] == 0 and th[i] != 1:
            raise ThetaViolation(f"theta_{i + 1} must be 1 for an even vector")
        if full[i] == 1 and th[i] != -th[j]:
            raise ThetaViolation(f"theta_{i + 1} must equal -theta_{j + 1}")
    return tuple(th)
