"""Exact coefficient rings.

Everything is expressed in the variable ``t = q**(1/4)`` so that quarter
powers of ``q`` (needed by Hopf pairings) and half powers (needed by matrix
entries) live in a single ring with integer exponents.

Classes
-------
QLaurent
    Laurent polynomials in ``t`` with rational coefficients.
QRat
    Quotients of two ``QLaurent`` values in canonical form.
ZRat
    Rational functions in a second variable ``z`` with ``QRat`` coefficients.
MLaurent
    Multivariate Laurent polynomials, used for checks that need several
    independent variables at once (``t``, ``z1``, ``z2``).

Plain ``int`` and ``fractions.Fraction`` values mix freely with all of
the above.
"""

from fractions import Fraction
from numbers import Rational

__all__ = [
    "RingError",
    "InexactDivision",
    "DivisionByZero",
    "PoleAtPoint",
    "QLaurent",
    "QRat",
    "ZRat",
    "MLaurent",
    "monomial",
    "qpow",
    "exact_div",
    "eval_at",
    "bar",
    "to_json",
    "from_json",
    "ONE",
    "ZERO",
    "Q",
    "QINV",
]


class RingError(ArithmeticError):
    pass


class InexactDivision(RingError):
    pass


class DivisionByZero(RingError, ZeroDivisionError):
    pass


class PoleAtPoint(RingError):
    pass


_SCALARS = (int, Fraction)


def _fdiv(a, b):
    """Field division that keeps ints exact."""
    if isinstance(a, int) and isinstance(b, int):
        return Fraction(a, b)
    return a / b


def _tidy(c):
    if isinstance(c, Fraction) and c.denominator == 1:
        return c.numerator
    return c


# ---------------------------------------------------------------------------
# dense univariate helpers over a field; coefficient lists are low -> high


def _ptrim(p):
    while p and not p[-1]:
        p.pop()
    return p


def _pdivmod(a, b):
    a = list(a)
    nb = len(b)
    if len(a) < nb:
        return [], _ptrim(a)
    quot = [0] * (len(a) - nb + 1)
    lead = b[-1]
    for k in range(len(a) - nb, -1, -1):
        c = a[k + nb - 1]
        if c:
            c = _fdiv(c, lead)
            quot[k] = c
            for i, bc in enumerate(b):
                if bc:
                    a[k + i] = a[k + i] - c * bc
    return _ptrim(quot), _ptrim(a[: nb - 1])


def _pmonic(p):
    lead = p[-1]
    return [_fdiv(c, lead) for c in p]


def _pgcd(a, b):
    a, b = _ptrim(list(a)), _ptrim(list(b))
    while b:
        a, b = b, _pdivmod(a, b)[1]
    return _pmonic(a)


def _pmul(a, b):
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                if y:
                    out[i + j] = out[i + j] + x * y
    return _ptrim(out)


def _padd(a, b):
    if len(a) < len(b):
        a, b = b, a
    out = list(a)
    for i, y in enumerate(b):
        out[i] = out[i] + y
    return _ptrim(out)


def _pneg(a):
    return [-c for c in a]


# ---------------------------------------------------------------------------


class QLaurent:
    """Laurent polynomial in ``t`` with rational coefficients.

    ``terms`` maps exponents of ``t`` to nonzero coefficients.  Instances
    are treated as immutable.
    """

    __slots__ = ("terms", "_hash")

    def __init__(self, terms=None):
        if terms is None:
            self.terms = {}
        else:
            self.terms = {k: _tidy(v) for k, v in terms.items() if v}
        self._hash = None

    @classmethod
    def _raw(cls, terms):
        obj = object.__new__(cls)
        obj.terms = terms
        obj._hash = None
        return obj

    @classmethod
    def const(cls, c):
        return cls._raw({0: c} if c else {})

    # -- predicates -------------------------------------------------------
    def __bool__(self):
        return bool(self.terms)

    def is_monomial(self):
        return len(self.terms) == 1

    def is_const(self):
        return not self.terms or (len(self.terms) == 1 and 0 in self.terms)

    def low(self):
        return min(self.terms)

    def high(self):
        return max(self.terms)

    def const_value(self):
        return self.terms.get(0, 0)

    # -- arithmetic -------------------------------------------------------
    def __add__(self, other):
        if isinstance(other, QLaurent):
            if not other.terms:
                return self
            out = dict(self.terms)
            for k, v in other.terms.items():
                w = out.get(k, 0) + v
                if w:
                    out[k] = w
                else:
                    del out[k]
            return QLaurent._raw(out)
        if isinstance(other, _SCALARS):
            if not other:
                return self
            out = dict(self.terms)
            w = out.get(0, 0) + other
            if w:
                out[0] = w
            else:
                del out[0]
            return QLaurent._raw(out)
        return NotImplemented

    __radd__ = __add__

    def __neg__(self):
        return QLaurent._raw({k: -v for k, v in self.terms.items()})

    def __pos__(self):
        return self

    def __sub__(self, other):
        if isinstance(other, (QLaurent,) + _SCALARS):
            return self + (-other)
        return NotImplemented

    def __rsub__(self, other):
        if isinstance(other, _SCALARS):
            return (-self) + other
        return NotImplemented

    def __mul__(self, other):
        if isinstance(other, QLaurent):
            a, b = self.terms, other.terms
            if not a or not b:
                return ZERO
            if len(a) < len(b):
                a, b = b, a
            if len(b) == 1:
                ((kb, vb),) = b.items()
                return QLaurent._raw({k + kb: v * vb for k, v in a.items()})
            out = {}
            for ka, va in a.items():
                for kb, vb in b.items():
                    k = ka + kb
                    out[k] = out.get(k, 0) + va * vb
            return QLaurent._raw({k: v for k, v in out.items() if v})
        if isinstance(other, _SCALARS):
            if not other:
                return ZERO
            if other == 1:
                return self
            return QLaurent._raw({k: v * other for k, v in self.terms.items()})
        return NotImplemented

    __rmul__ = __mul__

    def __pow__(self, n):
        if not isinstance(n, int):
            return NotImplemented
        if n < 0:
            if not self.is_monomial():
                raise InexactDivision("negative power of a non-monomial")
            ((k, c),) = self.terms.items()
            return QLaurent._raw({k * n: _tidy(Fraction(c) ** n)})
        result = ONE
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def __truediv__(self, other):
        if isinstance(other, _SCALARS):
            if not other:
                raise DivisionByZero("division by zero")
            return QLaurent._raw({k: _tidy(_fdiv(v, other)) for k, v in self.terms.items()})
        if isinstance(other, QLaurent):
            if other.is_monomial():
                ((k0, c0),) = other.terms.items()
                return QLaurent._raw(
                    {k - k0: _tidy(_fdiv(v, c0)) for k, v in self.terms.items()}
                )
            return QRat(self, other)
        return NotImplemented

    def __rtruediv__(self, other):
        if isinstance(other, _SCALARS):
            return QLaurent.const(other) / self
        return NotImplemented

    # -- comparison -------------------------------------------------------
    def __eq__(self, other):
        if isinstance(other, QLaurent):
            return self.terms == other.terms
        if isinstance(other, _SCALARS):
            if not other:
                return not self.terms
            return self.terms == {0: other}
        return NotImplemented

    def __hash__(self):
        if self._hash is None:
            if self.is_const():
                self._hash = hash(self.const_value())
            else:
                self._hash = hash(frozenset(self.terms.items()))
        return self._hash

    # -- maps ---------------------------------------------------------------
    def bar(self):
        """Image under ``t -> 1/t`` (equivalently ``q -> 1/q``)."""
        return QLaurent._raw({-k: v for k, v in self.terms.items()})

    def shift(self, k):
        return QLaurent._raw({e + k: v for e, v in self.terms.items()})

    def eval(self, t0):
        t0 = Fraction(t0)
        if not t0 and any(k < 0 for k in self.terms):
            raise PoleAtPoint("negative power of t at t = 0")
        total = Fraction(0)
        for k, v in self.terms.items():
            total += v * t0**k
        return total

    def dense(self):
        """Return ``(shift, coeffs)`` with ``self = t**shift * sum(coeffs[i] t**i)``."""
        if not self.terms:
            return 0, []
        lo, hi = self.low(), self.high()
        coeffs = [0] * (hi - lo + 1)
        for k, v in self.terms.items():
            coeffs[k - lo] = v
        return lo, coeffs

    @classmethod
    def from_dense(cls, shift, coeffs):
        return cls({shift + i: c for i, c in enumerate(coeffs) if c})

    def __repr__(self):
        if not self.terms:
            return "0"
        parts = []
        for k in sorted(self.terms, reverse=True):
            c = self.terms[k]
            if k == 0:
                parts.append(str(c))
            elif c == 1:
                parts.append(f"t^{k}")
            elif c == -1:
                parts.append(f"-t^{k}")
            else:
                parts.append(f"{c}*t^{k}")
        return " + ".join(parts).replace("+ -", "- ")

    def to_json(self):
        return [[k, str(v.numerator), str(v.denominator)] for k, v in sorted(self.terms.items())]

    @classmethod
    def from_json(cls, data):
        return cls({int(k): _tidy(Fraction(int(n), int(d))) for k, n, d in data})


ZERO = QLaurent._raw({})
ONE = QLaurent._raw({0: 1})
Q = QLaurent._raw({4: 1})
QINV = QLaurent._raw({-4: 1})


def monomial(c, k):
    """Return ``c * t**k``."""
    return QLaurent({k: c})


def qpow(e):
    """Return ``q**e`` for ``e`` with ``4*e`` integral."""
    k = Fraction(e) * 4
    if k.denominator != 1:
        raise ValueError(f"q**{e} is not a power of t")
    return QLaurent._raw({int(k): 1})


def _as_laurent(x):
    if isinstance(x, QLaurent):
        return x
    if isinstance(x, _SCALARS):
        return QLaurent.const(x)
    raise TypeError(f"cannot coerce {type(x).__name__} to QLaurent")


def exact_div(a, b):
    """Divide Laurent polynomials, raising if the quotient is not Laurent."""
    a, b = _as_laurent(a), _as_laurent(b)
    if not b:
        raise DivisionByZero("division by the zero polynomial")
    if not a:
        return ZERO
    if b.is_monomial():
        return a / b
    sa, pa = a.dense()
    sb, pb = b.dense()
    quot, rem = _pdivmod(pa, pb)
    if rem:
        raise InexactDivision(f"({a}) / ({b}) leaves a remainder")
    return QLaurent.from_dense(sa - sb, quot)


# ---------------------------------------------------------------------------


class QRat:
    """Element of the fraction field of ``QLaurent``.

    Stored in canonical form: the denominator has minimal exponent 0 and
    leading coefficient 1, and shares no factor with the numerator.
    """

    __slots__ = ("num", "den")

    def __init__(self, num, den=None):
        num = _as_laurent(num)
        den = ONE if den is None else _as_laurent(den)
        if not den:
            raise DivisionByZero("zero denominator")
        self.num, self.den = _qrat_normalize(num, den)

    @classmethod
    def _raw(cls, num, den):
        obj = object.__new__(cls)
        obj.num = num
        obj.den = den
        return obj

    @staticmethod
    def lift(x):
        if isinstance(x, QRat):
            return x
        if isinstance(x, QLaurent):
            return QRat._raw(x, ONE)
        if isinstance(x, _SCALARS):
            return QRat._raw(QLaurent.const(x), ONE)
        raise TypeError(f"cannot coerce {type(x).__name__} to QRat")

    def __bool__(self):
        return bool(self.num)

    def is_laurent(self):
        return self.den == ONE

    def to_laurent(self):
        if not self.is_laurent():
            raise InexactDivision(f"{self} is not a Laurent polynomial")
        return self.num

    def __add__(self, other):
        if isinstance(other, (QLaurent,) + _SCALARS):
            if self.den is ONE or self.den == ONE:
                return QRat._raw(self.num + other, ONE)
            return QRat._raw(self.num + self.den * other, self.den)
        if not isinstance(other, QRat):
            return NotImplemented
        if self.den == other.den:
            return QRat(self.num + other.num, self.den)
        return QRat(self.num * other.den + other.num * self.den, self.den * other.den)

    __radd__ = __add__

    def __neg__(self):
        return QRat._raw(-self.num, self.den)

    def __sub__(self, other):
        if isinstance(other, (QRat, QLaurent) + _SCALARS):
            return self + (-other)
        return NotImplemented

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (QLaurent,) + _SCALARS):
            if self.den == ONE:
                return QRat._raw(self.num * other, ONE)
            return QRat(self.num * other, self.den)
        if not isinstance(other, QRat):
            return NotImplemented
        if self.den == ONE and other.den == ONE:
            return QRat._raw(self.num * other.num, ONE)
        return QRat(self.num * other.num, self.den * other.den)

    __rmul__ = __mul__

    def inverse(self):
        if not self.num:
            raise DivisionByZero("inverse of zero")
        return QRat(self.den, self.num)

    def __truediv__(self, other):
        if isinstance(other, (QLaurent,) + _SCALARS):
            other = QRat.lift(other)
        if not isinstance(other, QRat):
            return NotImplemented
        return self * other.inverse()

    def __rtruediv__(self, other):
        return QRat.lift(other) * self.inverse()

    def __pow__(self, n):
        if not isinstance(n, int):
            return NotImplemented
        if n < 0:
            return self.inverse() ** (-n)
        return QRat._raw(self.num**n, self.den**n)

    def __eq__(self, other):
        if isinstance(other, (QLaurent,) + _SCALARS):
            return self.den == ONE and self.num == other
        if isinstance(other, QRat):
            return self.num == other.num and self.den == other.den
        return NotImplemented

    def __hash__(self):
        if self.den == ONE:
            return hash(self.num)
        return hash((self.num, self.den))

    def bar(self):
        return QRat(self.num.bar(), self.den.bar())

    def eval(self, t0):
        d = self.den.eval(t0)
        if not d:
            raise PoleAtPoint(f"denominator {self.den} vanishes at t = {t0}")
        return self.num.eval(t0) / d

    def __repr__(self):
        if self.den == ONE:
            return repr(self.num)
        return f"({self.num})/({self.den})"

    def to_json(self):
        return {"num": self.num.to_json(), "den": self.den.to_json()}

    @classmethod
    def from_json(cls, data):
        return cls._raw(QLaurent.from_json(data["num"]), QLaurent.from_json(data["den"]))


def _qrat_normalize(num, den):
    if not num:
        return ZERO, ONE
    if den.is_monomial():
        return num / den, ONE
    sn, pn = num.dense()
    sd, pd = den.dense()
    g = _pgcd(pn, pd)
    if len(g) > 1:
        pn = _pdivmod(pn, g)[0]
        pd = _pdivmod(pd, g)[0]
    lead = pd[-1]
    pn = [_tidy(_fdiv(c, lead)) for c in pn]
    pd = [_tidy(_fdiv(c, lead)) for c in pd]
    if len(pd) == 1:
        return QLaurent.from_dense(sn - sd, pn), ONE
    return QLaurent.from_dense(sn - sd, pn), QLaurent.from_dense(0, pd)


# ---------------------------------------------------------------------------


def _zpoly(d):
    """Normalize a dict degree -> coefficient into a trimmed QRat list."""
    if not d:
        return []
    out = [QRat.lift(0)] * (max(d) + 1)
    for k, v in d.items():
        if k < 0:
            raise ValueError("negative z-degree in a polynomial")
        out[k] = QRat.lift(v)
    return _ptrim(out)


class ZRat:
    """Rational function in ``z`` over the field of ``QRat``.

    ``num`` and ``den`` are coefficient lists (low to high degree) of
    ``QRat`` values; ``den`` is monic and coprime to ``num``.
    """

    __slots__ = ("num", "den")

    def __init__(self, num, den=None):
        if isinstance(num, dict):
            num = _zpoly(num)
        else:
            num = _ptrim([QRat.lift(c) for c in num])
        if den is None:
            den = [QRat.lift(1)]
        elif isinstance(den, dict):
            den = _zpoly(den)
        else:
            den = _ptrim([QRat.lift(c) for c in den])
        if not den:
            raise DivisionByZero("zero denominator")
        self.num, self.den = _zrat_normalize(num, den)

    @classmethod
    def _raw(cls, num, den):
        obj = object.__new__(cls)
        obj.num = num
        obj.den = den
        return obj

    @staticmethod
    def lift(x):
        if isinstance(x, ZRat):
            return x
        x = QRat.lift(x)
        return ZRat._raw([x] if x else [], [QRat.lift(1)])

    @staticmethod
    def z():
        return ZRat._raw([QRat.lift(0), QRat.lift(1)], [QRat.lift(1)])

    def __bool__(self):
        return bool(self.num)

    def is_poly(self):
        return len(self.den) == 1

    def __add__(self, other):
        if not isinstance(other, ZRat):
            if isinstance(other, (QRat, QLaurent) + _SCALARS):
                other = ZRat.lift(other)
            else:
                return NotImplemented
        if self.den == other.den:
            return ZRat(_padd(self.num, other.num), self.den)
        return ZRat(
            _padd(_pmul(self.num, other.den), _pmul(other.num, self.den)),
            _pmul(self.den, other.den),
        )

    __radd__ = __add__

    def __neg__(self):
        return ZRat._raw(_pneg(self.num), self.den)

    def __sub__(self, other):
        return self + (-ZRat.lift(other))

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (QRat, QLaurent) + _SCALARS):
            if not other:
                return ZRat._raw([], [QRat.lift(1)])
            return ZRat._raw([c * other for c in self.num], self.den)
        if not isinstance(other, ZRat):
            return NotImplemented
        return ZRat(_pmul(self.num, other.num), _pmul(self.den, other.den))

    __rmul__ = __mul__

    def inverse(self):
        if not self.num:
            raise DivisionByZero("inverse of zero")
        return ZRat(self.den, self.num)

    def __truediv__(self, other):
        return self * ZRat.lift(other).inverse()

    def __rtruediv__(self, other):
        return ZRat.lift(other) * self.inverse()

    def __pow__(self, n):
        if n < 0:
            return self.inverse() ** (-n)
        out = ZRat.lift(1)
        for _ in range(n):
            out = out * self
        return out

    def __eq__(self, other):
        if isinstance(other, (QRat, QLaurent) + _SCALARS):
            other = ZRat.lift(other)
        if not isinstance(other, ZRat):
            return NotImplemented
        return self.num == other.num and self.den == other.den

    def __hash__(self):
        return hash((tuple(self.num), tuple(self.den)))

    def coeff(self, k):
        """Coefficient of ``z**k`` of a polynomial value."""
        if not self.is_poly():
            raise InexactDivision("not a polynomial in z")
        return self.num[k] if k < len(self.num) else QRat.lift(0)

    def subs_z(self, z0):
        """Substitute ``z = z0`` where ``z0`` lies in the coefficient field."""
        d = _horner(self.den, z0)
        if not d:
            raise PoleAtPoint(f"denominator vanishes at z = {z0}")
        return QRat.lift(_horner(self.num, z0)) / QRat.lift(d)

    def eval(self, t0, z0):
        z0 = Fraction(z0)
        num = sum((c.eval(t0) * z0**k for k, c in enumerate(self.num)), Fraction(0))
        den = sum((c.eval(t0) * z0**k for k, c in enumerate(self.den)), Fraction(0))
        if not den:
            raise PoleAtPoint(f"denominator vanishes at t = {t0}, z = {z0}")
        return num / den

    def __repr__(self):
        def show(p):
            return " + ".join(f"({c})*z^{k}" for k, c in enumerate(p) if c) or "0"

        if self.is_poly():
            return show(self.num)
        return f"[{show(self.num)}]/[{show(self.den)}]"

    def to_json(self):
        return {
            "num": [c.to_json() for c in self.num],
            "den": [c.to_json() for c in self.den],
        }

    @classmethod
    def from_json(cls, data):
        return cls._raw(
            [QRat.from_json(c) for c in data["num"]],
            [QRat.from_json(c) for c in data["den"]],
        )


def _horner(p, x):
    acc = 0
    for c in reversed(p):
        acc = acc * x + c
    return acc


def _zrat_normalize(num, den):
    one = QRat.lift(1)
    if not num:
        return [], [one]
    if len(den) > 1:
        g = _pgcd(num, den)
        if len(g) > 1:
            num = _pdivmod(num, g)[0]
            den = _pdivmod(den, g)[0]
    lead = den[-1]
    if lead != one:
        inv = lead.inverse()
        num = [c * inv for c in num]
        den = [c * inv for c in den]
    return num, den


# ---------------------------------------------------------------------------


class MLaurent:
    """Multivariate Laurent polynomial with rational coefficients.

    Keys of ``terms`` are exponent tuples of a fixed length ``nvars``.
    """

    __slots__ = ("nvars", "terms")

    def __init__(self, nvars, terms=None):
        self.nvars = nvars
        self.terms = {} if terms is None else {k: v for k, v in terms.items() if v}

    @classmethod
    def var(cls, i, nvars, power=1):
        key = tuple(power if j == i else 0 for j in range(nvars))
        return cls(nvars, {key: 1})

    @classmethod
    def embed(cls, x, nvars, slot=0):
        """Embed a scalar or ``QLaurent`` with its variable placed at ``slot``."""
        if isinstance(x, MLaurent):
            return x
        zero = [0] * nvars
        if isinstance(x, _SCALARS):
            return cls(nvars, {tuple(zero): x})
        out = {}
        for k, v in _as_laurent(x).terms.items():
            key = list(zero)
            key[slot] = k
            out[tuple(key)] = v
        return cls(nvars, out)

    def _coerce(self, other):
        if isinstance(other, MLaurent):
            return other
        if isinstance(other, (QLaurent,) + _SCALARS):
            return MLaurent.embed(other, self.nvars)
        return None

    def __bool__(self):
        return bool(self.terms)

    def __add__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        out = dict(self.terms)
        for k, v in other.terms.items():
            w = out.get(k, 0) + v
            if w:
                out[k] = w
            else:
                out.pop(k, None)
        return MLaurent(self.nvars, out)

    __radd__ = __add__

    def __neg__(self):
        return MLaurent(self.nvars, {k: -v for k, v in self.terms.items()})

    def __sub__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        out = {}
        for ka, va in self.terms.items():
            for kb, vb in other.terms.items():
                k = tuple(x + y for x, y in zip(ka, kb))
                out[k] = out.get(k, 0) + va * vb
        return MLaurent(self.nvars, out)

    __rmul__ = __mul__

    def __pow__(self, n):
        out = MLaurent.embed(1, self.nvars)
        for _ in range(n):
            out = out * self
        return out

    def __eq__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return self.terms == other.terms

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def eval(self, point):
        point = [Fraction(p) for p in point]
        total = Fraction(0)
        for k, v in self.terms.items():
            term = Fraction(v)
            for p, e in zip(point, k):
                if e:
                    if not p and e < 0:
                        raise PoleAtPoint("negative power at a zero coordinate")
                    term *= p**e
            total += term
        return total

    def __repr__(self):
        return f"MLaurent({self.nvars}, {self.terms!r})"


# ---------------------------------------------------------------------------


def eval_at(x, t0, z0=None):
    """Exact rational value of ``x`` at ``t = t0`` (and ``z = z0``)."""
    if isinstance(x, _SCALARS):
        return Fraction(x)
    if isinstance(x, (QLaurent, QRat)):
        return x.eval(t0)
    if isinstance(x, ZRat):
        if z0 is None:
            raise ValueError("z0 is required for elements depending on z")
        return x.eval(t0, z0)
    if isinstance(x, MLaurent):
        point = (t0,) if z0 is None else (t0,) + tuple(z0 if isinstance(z0, tuple) else (z0,))
        return x.eval(point)
    raise TypeError(f"cannot evaluate {type(x).__name__}")


def bar(x):
    """The ring involution ``q -> 1/q``; scalars are fixed."""
    if isinstance(x, _SCALARS):
        return x
    return x.bar()


def to_json(x):
    """Tagged JSON form of any ring element."""
    if isinstance(x, _SCALARS):
        x = QLaurent.const(x)
    if isinstance(x, QLaurent):
        return x.to_json()
    if isinstance(x, (QRat, ZRat)):
        return x.to_json()
    raise TypeError(f"cannot serialize {type(x).__name__}")


def from_json(data, ring):
    """Inverse of :func:`to_json` given the ring name."""
    if ring == "QLaurent":
        return QLaurent.from_json(data)
    if ring == "QRat":
        return QRat.from_json(data)
    if ring == "ZRat":
        return ZRat.from_json(data)
    raise ValueError(f"unknown ring {ring!r}")
