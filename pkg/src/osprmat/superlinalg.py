"""Sparse graded matrices on ``V``, ``V⊗V`` and ``V⊗V⊗V``.

Indices are 0-based internally.  A basis vector ``v_i ⊗ v_j`` of ``V⊗V``
(1-based ``i, j``) sits at composite index ``(i-1)*N + (j-1)``; exports
add one, giving the row-major ``(i-1)*N + j`` convention.

Sign convention for the graded tensor product::

    (A ⊗ B)(v_a ⊗ w_b) = (-1)^{|B| |v_a|} A v_a ⊗ B w_b

applied entrywise, where ``|B|`` is the parity of the individual entry.
"""

import csv
import io
from fractions import Fraction

from . import exactring as er
from .exactring import QLaurent, QRat, ZRat

__all__ = [
    "SuperDataMismatch",
    "GradedMatrix",
    "kron_graded",
    "tau",
    "supertranspose",
    "partial_supertranspose",
    "leg_embed",
    "E",
    "identity",
    "idx2",
    "vec_add",
    "vec_scale",
    "vec_sub",
    "vec_is_zero",
    "basis_vector",
    "SpanBasis",
    "rank",
    "nullspace",
]


class SuperDataMismatch(ValueError):
    pass


_SPACE_POWER = {"V": 1, "VV": 2, "VVV": 3}


def _grading(sd, space):
    p = sd.parity
    if space == "V":
        return tuple(p)
    if space == "VV":
        return tuple((a + b) % 2 for a in p for b in p)
    if space == "VVV":
        return tuple((a + b + c) % 2 for a in p for b in p for c in p)
    raise ValueError(f"unknown space {space!r}")


def _space_name(k):
    return {1: "V", 2: "VV", 3: "VVV"}[k]


def idx2(sd, i, j):
    """0-based composite index of ``v_i ⊗ v_j`` (1-based ``i, j``)."""
    return (i - 1) * sd.N + (j - 1)


class GradedMatrix:
    """Sparse square matrix over an exact ring acting on a tensor power of ``V``.

    ``rows`` maps a row index to a dict ``col -> entry``; no stored entry
    is zero.  Treat instances as immutable.
    """

    __slots__ = ("sd", "space", "dim", "rows")

    def __init__(self, sd, space, rows=None):
        self.sd = sd
        self.space = space
        self.dim = sd.N ** _SPACE_POWER[space]
        self.rows = {}
        if rows:
            for r, row in rows.items():
                clean = {c: v for c, v in row.items() if v}
                if clean:
                    self.rows[r] = clean

    @classmethod
    def _raw(cls, sd, space, rows):
        obj = object.__new__(cls)
        obj.sd = sd
        obj.space = space
        obj.dim = sd.N ** _SPACE_POWER[space]
        obj.rows = rows
        return obj

    @classmethod
    def from_entries(cls, sd, space, entries):
        rows = {}
        for (r, c), v in entries.items():
            if v:
                rows.setdefault(r, {})[c] = v
        return cls._raw(sd, space, rows)

    @property
    def grading(self):
        return _grading(self.sd, self.space)

    # -- inspection ---------------------------------------------------------
    def get(self, r, c):
        return self.rows.get(r, {}).get(c, 0)

    def items(self):
        for r in sorted(self.rows):
            row = self.rows[r]
            for c in sorted(row):
                yield (r, c), row[c]

    def nnz(self):
        return sum(len(row) for row in self.rows.values())

    def is_zero(self):
        return not self.rows

    def __bool__(self):
        return bool(self.rows)

    def parity(self):
        """Parity of a homogeneous matrix (0 for the zero matrix)."""
        g = self.grading
        seen = {(g[r] + g[c]) % 2 for (r, c), _ in self.items()}
        if len(seen) > 1:
            raise ValueError("matrix is not homogeneous")
        return seen.pop() if seen else 0

    def ring_tag(self):
        tag = "QLaurent"
        for _, v in self.items():
            if isinstance(v, ZRat):
                return "ZRat"
            if isinstance(v, QRat):
                tag = "QRat"
        return tag

    def first_nonzero(self):
        for key, v in self.items():
            return key, v
        return None

    def diagonal(self):
        return [self.get(i, i) for i in range(self.dim)]

    # -- arithmetic -----------------------------------------------------------
    def _check(self, other):
        if not isinstance(other, GradedMatrix):
            return False
        if other.sd != self.sd or other.space != self.space:
            raise SuperDataMismatch("matrices live on different spaces")
        return True

    def __add__(self, other):
        if not self._check(other):
            return NotImplemented
        rows = {r: dict(row) for r, row in self.rows.items()}
        for r, row in other.rows.items():
            tgt = rows.setdefault(r, {})
            for c, v in row.items():
                w = tgt[c] + v if c in tgt else v
                if w:
                    tgt[c] = w
                else:
                    tgt.pop(c, None)
            if not tgt:
                del rows[r]
        return GradedMatrix._raw(self.sd, self.space, rows)

    def __neg__(self):
        return GradedMatrix._raw(
            self.sd, self.space, {r: {c: -v for c, v in row.items()} for r, row in self.rows.items()}
        )

    def __sub__(self, other):
        if not self._check(other):
            return NotImplemented
        return self + (-other)

    def scale(self, k):
        if not k:
            return GradedMatrix._raw(self.sd, self.space, {})
        rows = {}
        for r, row in self.rows.items():
            new = {}
            for c, v in row.items():
                w = k * v
                if w:
                    new[c] = w
            if new:
                rows[r] = new
        return GradedMatrix._raw(self.sd, self.space, rows)

    def __mul__(self, k):
        if isinstance(k, GradedMatrix):
            return NotImplemented
        return self.scale(k)

    __rmul__ = __mul__

    def __matmul__(self, other):
        if isinstance(other, dict):
            return self.apply(other)
        if not self._check(other):
            return NotImplemented
        rows = {}
        brows = other.rows
        for r, row in self.rows.items():
            acc = {}
            for k, a in row.items():
                brow = brows.get(k)
                if not brow:
                    continue
                for c, b in brow.items():
                    p = a * b
                    if c in acc:
                        acc[c] = acc[c] + p
                    else:
                        acc[c] = p
            acc = {c: v for c, v in acc.items() if v}
            if acc:
                rows[r] = acc
        return GradedMatrix._raw(self.sd, self.space, rows)

    def apply(self, vec):
        """Apply to a sparse vector ``{index: coeff}``."""
        out = {}
        for r, row in self.rows.items():
            acc = 0
            for c, a in row.items():
                x = vec.get(c)
                if x:
                    acc = acc + a * x
            if acc:
                out[r] = acc
        return out

    def __eq__(self, other):
        if not isinstance(other, GradedMatrix):
            return NotImplemented
        if other.sd != self.sd or other.space != self.space:
            return False
        return (self - other).is_zero()

    __hash__ = None

    def map(self, fn):
        rows = {}
        for r, row in self.rows.items():
            new = {}
            for c, v in row.items():
                w = fn(v)
                if w:
                    new[c] = w
            if new:
                rows[r] = new
        return GradedMatrix._raw(self.sd, self.space, rows)

    def bar(self):
        """Entrywise ``q -> 1/q``."""
        return self.map(er.bar)

    def eval_q(self, t0):
        """Entrywise specialization ``t = t0`` (``q = t0**4``)."""
        return self.map(lambda v: er.eval_at(v, t0) if not isinstance(v, (int, Fraction)) else v)

    def transpose(self):
        entries = {(c, r): v for (r, c), v in self.items()}
        return GradedMatrix.from_entries(self.sd, self.space, entries)

    def commutator(self, other, sign=1):
        """``self @ other - sign * other @ self``."""
        return self @ other - (other @ self).scale(sign)

    # -- serialization --------------------------------------------------------
    def to_json(self):
        ring = self.ring_tag()
        entries = []
        for (r, c), v in self.items():
            if ring == "QRat":
                v = QRat.lift(v)
            elif ring == "ZRat":
                v = ZRat.lift(v)
            elif not isinstance(v, QLaurent):
                v = QLaurent.const(v)
            entries.append({"r": r + 1, "c": c + 1, "coeff": v.to_json()})
        return {
            "dim": self.dim,
            "space": self.space,
            "ring": ring,
            "index": "(i1-1)*N^(k-1)+...+ik, row-major, 1-based",
            "superdata": self.sd.to_json(),
            "entries": entries,
        }

    @classmethod
    def from_json(cls, data, sd=None):
        if sd is None:
            from .superdata import build

            d = data["superdata"]
            N = d["m"] + d["n"]
            par = d["parity"][: N // 2] if d["family"] == "osp" else d["parity"]
            sd = build(d["family"], d["m"], d["n"], par, d["theta"])
        ring = data.get("ring", "QLaurent")
        entries = {}
        for e in data["entries"]:
            entries[(e["r"] - 1, e["c"] - 1)] = er.from_json(e["coeff"], ring)
        m = cls.from_entries(sd, data["space"], entries)
        if m.dim != data["dim"]:
            raise SuperDataMismatch("dimension does not match the superdata")
        return m

    def to_dense(self):
        out = [[0] * self.dim for _ in range(self.dim)]
        for (r, c), v in self.items():
            out[r][c] = v
        return out

    def to_csv(self):
        if self.sd.N > 5:
            raise ValueError("dense CSV export is limited to N <= 5")
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        for row in self.to_dense():
            w.writerow([str(v) for v in row])
        return buf.getvalue()

    def __repr__(self):
        return f"GradedMatrix({self.sd.label()}, {self.space}, nnz={self.nnz()})"


# ---------------------------------------------------------------------------


def E(sd, i, j, coeff=1):
    """Matrix unit ``coeff * E_ij`` on ``V`` (1-based)."""
    return GradedMatrix._raw(sd, "V", {i - 1: {j - 1: coeff}} if coeff else {})


def identity(sd, space="V"):
    dim = sd.N ** _SPACE_POWER[space]
    return GradedMatrix._raw(sd, space, {i: {i: 1} for i in range(dim)})


def kron_graded(A, B):
    """Graded tensor product of matrices on tensor powers of ``V``."""
    if A.sd != B.sd:
        raise SuperDataMismatch("tensor factors come from different superdata")
    ka, kb = _SPACE_POWER[A.space], _SPACE_POWER[B.space]
    if ka + kb > 3:
        raise ValueError("tensor powers above three are not supported")
    ga, gb = A.grading, B.grading
    db = B.dim
    rows = {}
    for ra, rowa in A.rows.items():
        for rb, rowb in B.rows.items():
            r = ra * db + rb
            tgt = rows.setdefault(r, {})
            for ca, va in rowa.items():
                pa = ga[ca]
                for cb, vb in rowb.items():
                    v = va * vb
                    if pa and (gb[rb] + gb[cb]) % 2:
                        v = -v
                    tgt[ca * db + cb] = v
    rows = {r: row for r, row in rows.items() if row}
    return GradedMatrix._raw(A.sd, _space_name(ka + kb), rows)


def tau(sd):
    """Graded flip ``v_i ⊗ v_j -> (-1)^{|i||j|} v_j ⊗ v_i`` on ``V⊗V``."""
    rows = {}
    N = sd.N
    for i in range(1, N + 1):
        for j in range(1, N + 1):
            sign = -1 if sd.par(i) and sd.par(j) else 1
            rows[idx2(sd, j, i)] = {idx2(sd, i, j): sign}
    return GradedMatrix._raw(sd, "VV", rows)


def supertranspose(A):
    """``X^st = sum (-1)^{|j|(|i|+|j|)} x_ij E_ji`` on ``V``."""
    if A.space != "V":
        raise ValueError("supertranspose acts on matrices over V")
    sd = A.sd
    entries = {}
    for (r, c), v in A.items():
        pi, pj = sd.parity[r], sd.parity[c]
        entries[(c, r)] = -v if pj and (pi + pj) % 2 else v
    return GradedMatrix.from_entries(sd, "V", entries)


def _decompose_vv(R):
    """Yield ``(i, j, k, l, x)`` with ``R = sum x E_ij ⊗ E_kl`` (1-based)."""
    sd = R.sd
    N = sd.N
    for (r, c), v in R.items():
        i, k = divmod(r, N)
        j, l = divmod(c, N)
        if sd.parity[j] and (sd.parity[k] + sd.parity[l]) % 2:
            v = -v
        yield i + 1, j + 1, k + 1, l + 1, v


def _compose_vv(sd, terms):
    total = {}
    for i, j, k, l, x in terms:
        if not x:
            continue
        r = idx2(sd, i, k)
        c = idx2(sd, j, l)
        if sd.par(j) and (sd.par(k) + sd.par(l)) % 2:
            x = -x
        total[(r, c)] = total[(r, c)] + x if (r, c) in total else x
    return GradedMatrix.from_entries(sd, "VV", total)


def partial_supertranspose(R, leg):
    """Apply the supertranspose to tensor leg 1 or 2 of a matrix on ``V⊗V``."""
    sd = R.sd

    def st_sign(a, b):
        pa, pb = sd.par(a), sd.par(b)
        return -1 if pb and (pa + pb) % 2 else 1

    terms = []
    for i, j, k, l, x in _decompose_vv(R):
        if leg == 1:
            terms.append((j, i, k, l, st_sign(i, j) * x))
        elif leg == 2:
            terms.append((i, j, l, k, st_sign(k, l) * x))
        else:
            raise ValueError("leg must be 1 or 2")
    return _compose_vv(sd, terms)


def leg_embed(R, legs):
    """Embed ``R`` on ``V⊗V`` into ``V⊗V⊗V`` on the given pair of legs."""
    sd = R.sd
    I = identity(sd, "V")
    if legs == "12":
        return kron_graded(R, I)
    if legs == "23":
        return kron_graded(I, R)
    if legs == "13":
        t23 = kron_graded(I, tau(sd))
        return t23 @ kron_graded(R, I) @ t23
    raise ValueError(f"unknown legs {legs!r}")


# -- sparse vectors ------------------------------------------------------------


def basis_vector(sd, *labels):
    """Basis vector ``v_{i1} ⊗ ... ⊗ v_{ik}`` as a sparse dict."""
    r = 0
    for i in labels:
        r = r * sd.N + (i - 1)
    return {r: 1}


def vec_add(a, b):
    out = dict(a)
    for k, v in b.items():
        w = out[k] + v if k in out else v
        if w:
            out[k] = w
        else:
            out.pop(k, None)
    return out


def vec_scale(k, a):
    if not k:
        return {}
    return {i: k * v for i, v in a.items() if k * v}


def vec_sub(a, b):
    return vec_add(a, vec_scale(-1, b))


def vec_is_zero(a):
    return not any(a.values())


# -- exact elimination -----------------------------------------------------------


def _field(x):
    if isinstance(x, QLaurent):
        return QRat.lift(x)
    if isinstance(x, int):
        return Fraction(x)
    return x


def _size(x):
    if isinstance(x, QRat):
        return len(x.num.terms) + len(x.den.terms)
    return 1


class SpanBasis:
    """Incremental reduced row echelon basis of a span of sparse vectors.

    Each stored row records how it was combined from the inserted vectors,
    so membership tests can also return coordinates.  Pivots are chosen by
    smallest entry size to limit expression swell.
    """

    def __init__(self):
        self.rows = {}  # pivot -> (vector, combination)

    def __len__(self):
        return len(self.rows)

    def reduce(self, vec, comb=None):
        vec = {k: _field(v) for k, v in vec.items() if v}
        comb = dict(comb or {})
        for p, (row, rcomb) in self.rows.items():
            c = vec.get(p)
            if c:
                for k, v in row.items():
                    w = vec.get(k, 0) - c * v
                    if w:
                        vec[k] = w
                    else:
                        vec.pop(k, None)
                for k, v in rcomb.items():
                    w = comb.get(k, 0) - c * v
                    if w:
                        comb[k] = w
                    else:
                        comb.pop(k, None)
        return vec, comb

    def add(self, vec, tag=None):
        """Insert a vector; return True when it enlarged the span."""
        red, comb = self.reduce(vec, {tag: Fraction(1)} if tag is not None else None)
        if not red:
            return False
        p = min(red, key=lambda k: (_size(red[k]), k))
        inv = 1 / red[p]
        red = {k: v * inv for k, v in red.items()}
        comb = {k: v * inv for k, v in comb.items()}
        for q_, (row, rcomb) in list(self.rows.items()):
            c = row.get(p)
            if c:
                new = dict(row)
                for k, v in red.items():
                    w = new.get(k, 0) - c * v
                    if w:
                        new[k] = w
                    else:
                        new.pop(k, None)
                newc = dict(rcomb)
                for k, v in comb.items():
                    w = newc.get(k, 0) - c * v
                    if w:
                        newc[k] = w
                    else:
                        newc.pop(k, None)
                self.rows[q_] = (new, newc)
        self.rows[p] = (red, comb)
        return True

    def contains(self, vec):
        return not self.reduce(vec)[0]

    def express(self, vec):
        """Coordinates of ``vec`` over the inserted tags, or None if outside the span."""
        red, comb = self.reduce(vec)
        if red:
            return None
        return {k: -v for k, v in comb.items() if v}


def rank(vectors):
    basis = SpanBasis()
    for v in vectors:
        basis.add(v)
    return len(basis)


def nullspace(columns, dim):
    """Basis of ``{x : sum_k x_k columns[k] = 0}`` for sparse column vectors."""
    basis = SpanBasis()
    kernel = []
    for k, col in enumerate(columns):
        red, comb = basis.reduce(col, {k: Fraction(1)})
        if red:
            basis.add(col, tag=k)
        else:
            kernel.append({i: v for i, v in comb.items() if v})
    return kernel
