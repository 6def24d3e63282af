"""Evaluation modules, the spectral R-matrix ``R(z)`` and its checks.

The spectral parameter ``u`` of an evaluation module is never stored in a
matrix.  Generator matrices carry ``u = 1`` and a separate formal
``u``-degree (``+1`` for ``e0``, ``-1`` for ``f0``); the degree operator
``D`` then acts on ``u^k`` by ``q^k`` and needs no matrix at all.

``R(z)`` is kept in two shapes: an exact matrix over :class:`ZRat` and the
coefficient list of ``den(z) * R(z)``, a polynomial in ``z`` with Laurent
matrix coefficients.  All identity checks run on the polynomial shape.
"""

from dataclasses import dataclass, field
from fractions import Fraction
from itertools import product

from . import superdata as sdm
from .exactring import ONE, Q, QINV, MLaurent, QLaurent, QRat, ZRat, exact_div, qpow
from .repn import Gen, UnknownGenerator, X, _kmat, _parse_name, verify_relations, verify_serre
from .report import Report
from .rfinite import DEFAULT_POINTS, build_R0, build_Rinf, eigenvalues
from .superlinalg import (
    E,
    GradedMatrix,
    _compose_vv,
    identity,
    kron_graded,
    leg_embed,
    partial_supertranspose,
    supertranspose,
    tau,
)

__all__ = [
    "RelationFailure",
    "EigenvalueMismatch",
    "ODD_V1",
    "EVEN_V1",
    "ATYPE",
    "AffineRep",
    "SpectralR",
    "affine_case",
    "build_affine_rep",
    "verify_affine_rep",
    "build_Rz",
    "baxterization_constants",
    "yang_baxterize",
    "check_baxterization",
    "check_spectral_YBE",
    "check_affine_intertwining",
    "rational_R",
    "check_rational_YBE",
    "rational_limit_check",
    "verify_affine",
    "DEFAULT_YBE_POINTS",
]

ODD_V1 = "OddV1"
EVEN_V1 = "EvenV1"
ATYPE = "Atype"

UDEG = {"e": 1, "f": -1, "k": 0, "kinv": 0}

DEFAULT_YBE_POINTS = tuple(
    (DEFAULT_POINTS[k], DEFAULT_POINTS[(k + 2) % 7], DEFAULT_POINTS[(k + 4) % 7]) for k in range(7)
)


class RelationFailure(AssertionError):
    """A defining relation fails on the evaluation module; ``relation`` names it."""

    def __init__(self, relation, residual=None):
        super().__init__(f"relation {relation} fails")
        self.relation = relation
        self.residual = residual


class EigenvalueMismatch(ArithmeticError):
    pass


def _laurent(x):
    """Coerce an exact scalar that is known to be Laurent."""
    if isinstance(x, QRat):
        return exact_div(x.num, x.den)
    if isinstance(x, QLaurent):
        return x
    return QLaurent.const(x)


def _qdiag(sd, exponents):
    """Diagonal matrix ``diag(q^{x_1}, ..., q^{x_N})``."""
    return GradedMatrix(sd, "V", {a: {a: qpow(x)} for a, x in enumerate(exponents)})


def _diag(M):
    return [M.get(a, a) for a in range(M.dim)]


# -- evaluation modules ---------------------------------------------------------------


def affine_case(sd):
    if not sd.is_osp:
        return ATYPE
    return ODD_V1 if sd.par(1) else EVEN_V1


@dataclass(eq=False)
class AffineRep:
    """Affine extension of a finite representation with ``u`` set to one.

    ``e0`` and ``f0`` already include the factors ``a`` and ``b``; their
    formal ``u``-degrees are ``+1`` and ``-1``.
    """

    base: object
    e0: GradedMatrix
    f0: GradedMatrix
    h0half: GradedMatrix
    h0half_inv: GradedMatrix
    gamma: GradedMatrix
    a: QLaurent
    b: QLaurent
    case: str
    weight: tuple
    parity: int
    udeg: dict = field(default_factory=lambda: dict(UDEG))

    @property
    def sd(self):
        return self.base.sd

    def gen(self, kind):
        if kind == "e":
            return Gen(self.e0, self.parity, self.weight)
        if kind == "f":
            return Gen(self.f0, self.parity, tuple(-c for c in self.weight))
        zero = self.sd.zero_weight()
        if kind == "k":
            return Gen(self.h0half, 0, zero)
        if kind == "kinv":
            return Gen(self.h0half_inv, 0, zero)
        raise KeyError(kind)


def build_affine_rep(rep, a=ONE, attach=True, check=True):
    """Extend ``rep`` to the affine algebra; ``b`` follows from the case constraint.

    With ``check`` the module relations and the affine Serre instances are
    verified and the first violation raises :class:`RelationFailure`.
    """
    sd = rep.sd
    a = _laurent(a)
    if not a.is_monomial():
        raise ValueError("a must be an invertible monomial c*q^k")
    case = affine_case(sd)
    N = sd.N
    if case == ODD_V1:
        b = exact_div(-(Q + QINV), a)
        e0 = E(sd, sd.prime(1), 1, a)
        f0 = E(sd, 1, sd.prime(1), b)
        x11 = _diag(X(sd, 1, 1))
        k0 = _qdiag(sd, x11)
        k0inv = _qdiag(sd, [-x for x in x11])
    elif case == EVEN_V1:
        b = exact_div(QLaurent.const(sd.sgn(2)), a)
        e0 = X(sd, sd.prime(2), 1).scale(a)
        f0 = X(sd, 1, sd.prime(2)).scale(b)
        h = [sd.sgn(1) * x + sd.sgn(2) * y for x, y in zip(_diag(X(sd, 1, 1)), _diag(X(sd, 2, 2)))]
        k0 = _qdiag(sd, [-Fraction(x, 2) for x in h])
        k0inv = _qdiag(sd, [Fraction(x, 2) for x in h])
    else:
        b = exact_div(QLaurent.const(sd.sgn(N)), a)
        e0 = E(sd, N, 1, a)
        f0 = E(sd, 1, N, b)
        h = [0] * N
        h[0] += sd.sgn(1)
        h[N - 1] -= sd.sgn(N)
        k0 = _qdiag(sd, [-Fraction(x, 2) for x in h])
        k0inv = _qdiag(sd, [Fraction(x, 2) for x in h])
    theta, _ = sd.highest_root()
    aff = AffineRep(
        base=rep,
        e0=e0,
        f0=f0,
        h0half=k0,
        h0half_inv=k0inv,
        gamma=identity(sd, "V"),
        a=a,
        b=b,
        case=case,
        weight=tuple(-c for c in theta),
        parity=sd.theta_parity(),
    )
    if attach or check:
        rep.affine = aff
        for key in [k for k in rep._cache if isinstance(k, tuple) and _is_affine_name(k[0])]:
            del rep._cache[key]
    if check:
        report = verify_affine_rep(aff)
        bad = report.failures()
        if bad:
            raise RelationFailure(bad[0]["id"], bad[0].get("residual"))
    return aff


def _is_affine_name(name):
    try:
        return _parse_name(name)[1] == 0
    except UnknownGenerator:
        return False


def verify_affine_rep(aff, report=None):
    """Chevalley relations with the affine node, the central element and Serre instances."""
    rep = aff.base
    sd = rep.sd
    if rep.affine is not aff:
        rep.affine = aff
    if report is None:
        report = Report(sd.label(), "affine-module")
    theta, coords = sd.highest_root()
    # e0 must have weight -theta and the parity of theta
    report.add("deg(e0)", _weight_of(aff.e0, sd) in (None, aff.weight), "affine-grading")
    report.add("parity(e0)", aff.e0.parity() == aff.parity, "affine-grading")
    gamma = _kmat(rep, 0, 1)
    for i, k in enumerate(coords, start=1):
        if k:
            gamma = gamma @ _kmat(rep, i, int(k))
    report.zero("gamma=k0*prod(ki^ci)", gamma - aff.gamma, "affine-central")
    report.zero("gamma=I", aff.gamma - identity(sd, "V"), "affine-central")
    ab = aff.a * aff.b
    want = {ODD_V1: -(Q + QINV), EVEN_V1: QLaurent.const(sd.sgn(2)) if sd.N > 1 else ONE}.get(aff.case)
    if aff.case == ATYPE:
        want = QLaurent.const(sd.sgn(sd.N))
    report.add("ab", ab == want, "affine-ab")
    verify_relations(rep, indices=list(range(0, rep.s + 1)), report=report)
    if aff.case == ODD_V1:
        lhs = aff.e0 @ aff.f0 - aff.f0 @ aff.e0
        rhs = (E(sd, 1, 1) - E(sd, sd.prime(1), sd.prime(1))).scale(Q + QINV)
        report.zero("[e0,f0]-value", lhs - rhs, "affine-ef-value")
    verify_serre(rep, report)
    return report


def _weight_of(M, sd):
    """Common weight of the matrix units in ``M`` (None for the zero matrix)."""
    seen = {sd.wsub(sd.eps(r + 1), sd.eps(c + 1)) for (r, c), _ in M.items()}
    if len(seen) > 1:
        return "inhomogeneous"
    return seen.pop() if seen else None


# -- spectral R-matrix ---------------------------------------------------------------------


@dataclass(eq=False)
class SpectralR:
    """``R(z)`` with ``den(z) * R(z) = sum_k z^k coeffs[k]``.

    ``den`` is ``z - 1`` for osp and ``1`` for A-type; ``norm_point`` is the
    root of the prefactor (``q^{-m+n+2}`` for osp, ``1`` for A-type).
    """

    sd: object
    Rz: GradedMatrix
    coeffs: list
    den: tuple
    norm_point: QLaurent
    normalization: str

    def hat_coeffs(self):
        t = tau(self.sd)
        return [t @ P for P in self.coeffs]

    def at(self, t0, z0):
        """Exact specialization of ``den(z) R(z)`` at ``t = t0``, ``z = z0``."""
        return _poly_at([P.eval_q(t0) for P in self.coeffs], Fraction(z0))


def _poly_at(coeffs, z0):
    out = coeffs[0]
    for k in range(1, len(coeffs)):
        out = out + coeffs[k].scale(z0**k)
    return out


def _bracket_terms(sd):
    """Terms of the braces in the osp formula, i.e. of ``R(z) / (z - q^{-m+n+2})`` at infinity."""
    N = sd.N
    half = qpow(Fraction(1, 2)) - qpow(Fraction(-1, 2))
    full = Q - QINV
    out = [(i, i, k, k, ONE) for i in range(1, N + 1) for k in range(1, N + 1)]
    for i in range(1, N + 1):
        e2 = Fraction(sd.eps_pair(i, i))
        out.append((i, i, i, i, half * sd.sgn(i) * qpow(e2 / 2)))
        if sd.is_osp:
            out.append((i, i, sd.prime(i), sd.prime(i), -half * sd.sgn(i) * qpow(-e2 / 2)))
    for i in range(1, N + 1):
        for j in range(1, i):
            out.append((i, j, j, i, full * sd.sgn(j)))
            if sd.is_osp:
                sign = -1 if sd.par(j) * (sd.par(i) + sd.par(j)) % 2 else 1
                rho = qpow(sd.rho_pair(sd.wsub(sd.eps(i), sd.eps(j))))
                out.append((i, j, sd.prime(i), sd.prime(j), -full * sd.sgn(j) * sign * sd.th(i) * sd.th(j) * rho))
    return out


def _contraction_terms(sd):
    """``sum (-1)^{|i||j|} theta_i theta_j q^{(rho, eps_i - eps_j)} E_ij ⊗ E_i'j'``."""
    N = sd.N
    out = []
    for i in range(1, N + 1):
        for j in range(1, N + 1):
            sign = -1 if sd.par(i) and sd.par(j) else 1
            rho = qpow(sd.rho_pair(sd.wsub(sd.eps(i), sd.eps(j))))
            out.append((i, j, sd.prime(i), sd.prime(j), sign * sd.th(i) * sd.th(j) * rho))
    return out


def norm_point(sd):
    return qpow(-sd.m + sd.n + 2) if sd.is_osp else ONE


def build_Rz(sd):
    """The spectral R-matrix assembled from its displayed formula."""
    z = ZRat.z()
    c = Q - QINV
    B = _compose_vv(sd, _bracket_terms(sd))
    t = tau(sd)
    if sd.is_osp:
        p = norm_point(sd)
        K = _compose_vv(sd, _contraction_terms(sd))
        Rz = B.scale(z - p) + t.scale((z - p) * c / (z - 1)) - K.scale(ZRat.lift(c * p))
        den = (-1, 1)
        note = "R(z) = (z - q^(-m+n+2)) Rinf-part + ...; den(z) = z - 1"
    else:
        Rz = B.scale(z - 1) + t.scale(ZRat.lift(c))
        den = (1,)
        note = "R(z) = (z - 1) Rinf-part + (q - q^-1) tau; den(z) = 1"
    coeffs = _clear_denominator(Rz, den)
    return SpectralR(sd, Rz, coeffs, den, norm_point(sd), note)


def _clear_denominator(Rz, den):
    """Coefficient matrices of ``den(z) * Rz``; raises if an entry keeps a pole."""
    dz = ZRat(list(den))
    rows = {}
    deg = 0
    for (r, c), v in Rz.items():
        w = v * dz
        if not w.is_poly():
            raise ValueError(f"entry ({r + 1},{c + 1}) is not polynomial after clearing {den}")
        for k, cf in enumerate(w.num):
            if cf:
                rows.setdefault(k, {})[(r, c)] = _laurent(cf)
                deg = max(deg, k)
    return [GradedMatrix.from_entries(Rz.sd, "VV", rows.get(k, {})) for k in range(deg + 1)]


def _poly_to_zrat(coeffs, den):
    sd = coeffs[0].sd
    dz = ZRat(list(den))
    entries = {}
    for k, P in enumerate(coeffs):
        for key, v in P.items():
            entries.setdefault(key, {})[k] = v
    return GradedMatrix.from_entries(sd, "VV", {key: ZRat(d) / dz for key, d in entries.items()})


def _pad(coeffs, n):
    sd = coeffs[0].sd
    return list(coeffs) + [GradedMatrix(sd, "VV")] * (n - len(coeffs))


# -- Yang-Baxterization ---------------------------------------------------------------------


def baxterization_constants(lambdas, case):
    """``(C, D)`` with ``λ1 (z-1) R̂(z) = λ1 z (z-1) R̂^{-1} + C z I - D (z-1) R̂``.

    For A-type the pair is ``(λ1, 1/λ2)`` read off ``λ1 R̂(z) = λ2^{-1} R̂ + z λ1 R̂^{-1}``.
    """
    l1, l2, l3 = lambdas
    if case == ATYPE:
        return l1, exact_div(ONE, l2)
    r = lambda a, b: exact_div(a, b)  # noqa: E731
    if case == ODD_V1:
        C = 1 + r(l1, l2) + r(l1, l3) + r(l1 * l1, l2 * l3)
        D = r(l1, l2 * l3)
    elif case == EVEN_V1:
        C = 1 + r(l1, l2) + r(l1, l3) + r(l2, l3)
        D = r(ONE, l3)
    else:
        raise ValueError(f"unknown case {case!r}")
    return C, D


def _inverse_from_spectrum(Rhat, lambdas):
    """``R̂^{-1}`` as a polynomial in ``R̂`` once the eigenvalue polynomial annihilates it."""
    sd = Rhat.sd
    I = identity(sd, "VV")
    lams = [x for x in lambdas if x is not None]
    prod_ = I
    for lam in lams:
        prod_ = prod_ @ (Rhat - I.scale(lam))
    if not prod_.is_zero():
        raise EigenvalueMismatch(f"the polynomial with roots {lams} does not annihilate R̂")
    if len(lams) == 2:
        l1, l2 = lams
        return (I.scale(l1 + l2) - Rhat).scale(exact_div(ONE, l1 * l2))
    l1, l2, l3 = lams
    e1, e2, e3 = l1 + l2 + l3, l1 * l2 + l1 * l3 + l2 * l3, l1 * l2 * l3
    R2 = Rhat @ Rhat
    return (R2 - Rhat.scale(e1) + I.scale(e2)).scale(exact_div(ONE, e3))


def _baxter_coeffs(Rhat, Rhat_inv, lambdas, case, unit):
    """Coefficients of ``den(z) R̂(z)``; ``unit`` is ``I`` (or ``τ`` for the untwisted form)."""
    C, D = baxterization_constants(lambdas, case)
    l1 = lambdas[0]
    if case == ATYPE:
        return [Rhat.scale(exact_div(D, l1)), Rhat_inv]
    c = exact_div(C, l1)
    d = exact_div(D, l1)
    return [Rhat.scale(d), -Rhat_inv + unit.scale(c) - Rhat.scale(d), Rhat_inv]


def yang_baxterize(Rhat, lambdas, case):
    """``R̂(z)`` over :class:`ZRat` from a braid matrix with the given eigenvalues.

    ``R̂^{-1}`` is obtained from the eigenvalue polynomial, which also checks
    that ``R̂`` has no other eigenvalues.
    """
    inv = _inverse_from_spectrum(Rhat, lambdas)
    den = (1,) if case == ATYPE else (-1, 1)
    coeffs = _baxter_coeffs(Rhat, inv, lambdas, case, identity(Rhat.sd, "VV"))
    return _poly_to_zrat(coeffs, den)


def check_baxterization(spec, report=None):
    """``R(z)`` against both Yang-Baxterization routes and the finite limits."""
    sd = spec.sd
    if report is None:
        report = Report(sd.label(), "baxterization")
    case = affine_case(sd)
    lam = eigenvalues(sd)
    R0, Rinf = build_R0(sd), build_Rinf(sd)
    t = tau(sd)
    P = _pad(spec.coeffs, 3 if sd.is_osp else 2)
    # untwisted form straight from R0 and Rinf
    want = _baxter_coeffs(R0, Rinf, lam, case, t)
    for k, (got, exp) in enumerate(zip(P, want)):
        report.zero(f"baxterization-untwisted[z^{k}]", got - exp, "baxterization-without-tau")
    # twisted form from the braid matrix alone
    Rhat = t @ R0
    try:
        inv = _inverse_from_spectrum(Rhat, lam)
        report.add("spectrum-annihilates", True, "baxterization-spectrum")
        report.zero("Rhat^-1 = tau Rinf", inv - t @ Rinf, "baxterization-spectrum")
        want_hat = _baxter_coeffs(Rhat, inv, lam, case, identity(sd, "VV"))
        for k, (got, exp) in enumerate(zip(P, want_hat)):
            report.zero(f"baxterization[z^{k}]", t @ got - exp, "baxterization")
        yb = yang_baxterize(Rhat, lam, case)
        report.zero("baxterization-ZRat", yb - t @ spec.Rz, "baxterization")
    except EigenvalueMismatch as exc:
        report.add("spectrum-annihilates", False, "baxterization-spectrum", str(exc))
    # finite limits
    if sd.is_osp:
        p = spec.norm_point
        report.zero("R(0)/(0-p)=R0", P[0].scale(exact_div(ONE, p)) - R0, "spectral-limit-0")
        report.zero("R(z)/(z-p) at infinity = Rinf", P[2] - Rinf, "spectral-limit-inf")
        C, _ = baxterization_constants(lam, case)
        total = P[0] + P[1] + P[2]
        report.zero("(z-1)R(z) at z=1", total - t.scale(exact_div(C, lam[0])), "baxterization-z1")
    else:
        report.zero("-R(0)=R0", -P[0] - R0, "spectral-limit-0")
        report.zero("R(z)/z at infinity = Rinf", P[1] - Rinf, "spectral-limit-inf")
    return report


# -- spectral YBE ---------------------------------------------------------------------------


def _collect(terms):
    out = {}
    for key, M in terms:
        out[key] = out[key] + M if key in out else M
    return out


def _ybe_symbolic(P):
    """Both sides of ``R12(z1) R13(z1 z2) R23(z2)`` keyed by ``(deg z1, deg z2)``."""
    A = [leg_embed(M, "12") for M in P]
    B = [leg_embed(M, "13") for M in P]
    C = [leg_embed(M, "23") for M in P]
    n = range(len(P))
    lhs, rhs = [], []
    for a, b in product(n, n):
        AB = A[a] @ B[b]
        CB = C[a] @ B[b]
        for c in n:
            lhs.append(((a + b, b + c), AB @ C[c]))
            rhs.append(((b + c, a + b), CB @ A[c]))
    return _collect(lhs), _collect(rhs)


def _braid_symbolic(H):
    """Both sides of ``R̂12(z1) R̂23(z1 z2) R̂12(z2)`` keyed by ``(deg z1, deg z2)``."""
    A = [leg_embed(M, "12") for M in H]
    C = [leg_embed(M, "23") for M in H]
    n = range(len(H))
    lhs, rhs = [], []
    for a, b in product(n, n):
        AC = A[a] @ C[b]
        CA = C[a] @ A[b]
        for c in n:
            lhs.append(((a + b, b + c), AC @ A[c]))
            rhs.append(((b + c, a + b), CA @ C[c]))
    return _collect(lhs), _collect(rhs)


def _compare_keyed(report, label, lhs, rhs, ref):
    ok = True
    for key in sorted(set(lhs) | set(rhs)):
        L = lhs.get(key)
        R = rhs.get(key)
        diff = (L if L is not None else -R) if (L is None or R is None) else L - R
        if not diff.is_zero():
            ok = report.zero(f"{label}[z1^{key[0]} z2^{key[1]}]", diff, ref) and ok
    if ok:
        report.add(label, True, ref)
    return ok


def check_spectral_YBE(spec, report=None, mode="auto", points=None, braid=True):
    """Spectral YBE in ``R`` form and braid form.

    ``mode="symbolic"`` compares coefficients of ``z1^a z2^b`` exactly;
    ``"specialize"`` evaluates at exact rational ``(t, z1, z2)`` points
    (``q = t^4``).  ``"auto"`` is symbolic for ``N <= 4``.
    """
    sd = spec.sd
    if report is None:
        report = Report(sd.label(), "spectral-YBE")
    if mode == "auto":
        mode = "symbolic" if sd.N <= 4 else "specialize"
    P = spec.coeffs
    t = tau(sd)
    if mode == "symbolic":
        lhs, rhs = _ybe_symbolic(P)
        _compare_keyed(report, "spectral-YBE[sym]", lhs, rhs, "spectral-YBE")
        if braid:
            lhs, rhs = _braid_symbolic([t @ M for M in P])
            _compare_keyed(report, "spectral-braid[sym]", lhs, rhs, "spectral-braid")
        return report
    pts = list(points or DEFAULT_YBE_POINTS[:5])
    for pt in pts:
        t0, z1, z2 = (Fraction(x) for x in pt)
        Pt = [M.eval_q(t0) for M in P]
        R12, R13, R23 = (leg_embed(_poly_at(Pt, z), legs) for z, legs in ((z1, "12"), (z1 * z2, "13"), (z2, "23")))
        label = f"t={t0},z1={z1},z2={z2}"
        lhs = R12 @ R13 @ R23
        rhs = R23 @ R13 @ R12
        report.zero(f"spectral-YBE[{label}]", lhs - rhs, "spectral-YBE")
        if braid:
            tt = t.eval_q(t0)
            H = lambda z, legs: leg_embed(tt @ _poly_at(Pt, z), legs)  # noqa: E731
            lhs = H(z1, "12") @ H(z1 * z2, "23") @ H(z2, "12")
            rhs = H(z2, "23") @ H(z1 * z2, "12") @ H(z1, "23")
            report.zero(f"spectral-braid[{label}]", lhs - rhs, "spectral-braid")
    return report


# -- affine intertwining ------------------------------------------------------------------


def _affine_coproduct(rep, name, swapped=False):
    """``[D0, D1]`` with ``(ϱ_u ⊗ ϱ_v)(Δ x) ~ D0 + z D1`` after removing a power of ``u`` or ``v``.

    With ``swapped`` the modules are ``ϱ_v ⊗ ϱ_u``.  Both sides of the
    intertwining identity are normalized by the same power of ``v``.
    """
    kind, idx = _parse_name(name)
    g = rep.gen(name).mat
    sd = rep.sd
    zero = GradedMatrix(sd, "VV")
    if kind in ("k", "kinv"):
        return [kron_graded(g, g), zero]
    k = rep.gen(("k", idx)).mat
    kinv = rep.gen(("kinv", idx)).mat
    right = kron_graded(k, g)  # generator on leg 2
    left = kron_graded(g, kinv)  # generator on leg 1
    d = rep.affine.udeg[kind] if idx == 0 else 0
    if d == 0:
        return [right + left, zero]
    # e0 (d = 1): divide by v; f0 (d = -1): multiply by u.  Leg 1 carries u^d.
    z_on_left = (d == 1) != swapped
    return [right, left] if z_on_left else [left, right]


def check_affine_intertwining(spec, arep_u, arep_v=None, report=None, names=None):
    """``R̂(u/v) (ϱ_u ⊗ ϱ_v)(x) = (ϱ_v ⊗ ϱ_u)(x) R̂(u/v)`` for every generator."""
    rep = arep_u.base
    sd = rep.sd
    if arep_v is not None and (arep_v.a != arep_u.a or arep_v.b != arep_u.b):
        raise ValueError("both evaluation modules must share (a, b)")
    if report is None:
        report = Report(sd.label(), "affine-intertwining")
    H = spec.hat_coeffs()
    for name in names or rep.generator_names(include_affine=True):
        L = _affine_coproduct(rep, name)
        Rt = _affine_coproduct(rep, name, swapped=True)
        ok = True
        for deg in range(len(H) + 1):
            acc = GradedMatrix(sd, "VV")
            for a in range(len(H)):
                b = deg - a
                if 0 <= b <= 1:
                    acc = acc + H[a] @ L[b] - Rt[b] @ H[a]
            if not acc.is_zero():
                ok = report.zero(f"affine-intertwine[{name}][z^{deg}]", acc, "affine-intertwiner")
                break
        if ok:
            report.add(f"affine-intertwine[{name}]", True, "affine-intertwiner")
    return report


def check_f0_by_supertranspose(spec, aff, report):
    """Second route to ``f0``: ``st1 st2`` symmetry of ``R(z)`` plus ``e0^st ~ f0``, ``k0^st = k0``."""
    sd = aff.sd
    t = tau(sd)
    for k, P in enumerate(spec.coeffs):
        st12 = partial_supertranspose(partial_supertranspose(P, 1), 2)
        report.zero(f"R(z)-st-symmetry[z^{k}]", P - t @ st12 @ t, "spectral-supertranspose")
    report.zero("k0^st", supertranspose(aff.h0half) - aff.h0half, "supertranspose-k0")
    est = supertranspose(aff.e0)
    (r, c), v = aff.f0.first_nonzero()
    x = est.get(r, c)
    ok = bool(x) and (est.scale(v) - aff.f0.scale(x)).is_zero()
    report.add("e0^st~f0", ok, "supertranspose-e0")
    return report


def _e0_split(aff):
    """``(U, V)`` with ``(ϱ_u ⊗ ϱ_v)(Δ e0) = u U + v V`` (``a`` included)."""
    k0, k0inv = aff.h0half, aff.h0half_inv
    return kron_graded(aff.e0, k0inv), kron_graded(k0, aff.e0)


def check_e0_commutators(aff, report):
    """The explicit commutators of ``Rinf`` and ``R0`` with ``e0`` when ``|v1|`` is odd."""
    sd = aff.sd
    if aff.case != ODD_V1:
        return report
    t = tau(sd)
    U, Vv = _e0_split(aff)
    # Δop(e0) on V(u) ⊗ V(v): flip the coproduct of V(v) ⊗ V(u)
    Uop, Vop = t @ Vv @ t, t @ U @ t
    c = Q - QINV
    one_p = sd.prime(1)
    tt = [aff.h0half.get(j, j) for j in range(sd.N)]
    shift = Fraction(sd.m - sd.n - 2, 2)
    rho = lambda i: sd.rho_pair(sd.eps(i))  # noqa: E731
    for which, R, sgn_shift in (("Rinf", build_Rinf(sd), -1), ("R0", build_R0(sd), 1)):
        cu = R @ U - Uop @ R
        cv = R @ Vv - Vop @ R
        terms = []
        for i in range(1, sd.N + 1):
            terms.append((i, 1, sd.prime(i), 1, -c * qpow(sgn_shift * shift) * sd.sgn(i) * sd.th(i) * sd.th(1) * qpow(rho(i))))
            terms.append((one_p, i, one_p, sd.prime(i), c * qpow(sgn_shift * shift) * sd.sgn(i) * sd.th(one_p) * sd.th(i) * qpow(-rho(i))))
            if which == "Rinf":
                terms.append((one_p, i, i, 1, c * sd.sgn(i) * tt[i - 1]))
                terms.append((i, 1, one_p, i, c * exact_div(ONE, tt[i - 1])))
            else:
                terms.append((i, 1, one_p, i, c * exact_div(ONE, tt[i - 1])))
                terms.append((one_p, i, i, 1, c * sd.sgn(i) * tt[i - 1]))
        want = _compose_vv(sd, terms).scale(aff.a)
        if which == "Rinf":
            report.zero("Rinf-e0[u]", cu, "Rinf-e0-display")
            report.zero("Rinf-e0[v]", cv - want, "Rinf-e0-display")
        else:
            report.zero("R0-e0[v]", cv, "R0-e0-display")
            report.zero("R0-e0[u]", cu - want, "R0-e0-display")
    return report


# -- rational limit ---------------------------------------------------------------------------


def rational_R(sd):
    """``(kappa, K)`` with ``R(u) = I - τ/u + K/(u - kappa)`` (``K`` is zero for A-type)."""
    if not sd.is_osp:
        return None, GradedMatrix(sd, "VV")
    terms = []
    for i in range(1, sd.N + 1):
        for j in range(1, sd.N + 1):
            sign = -1 if sd.par(i) and sd.par(j) else 1
            terms.append((i, j, sd.prime(i), sd.prime(j), sign * sd.th(i) * sd.th(j)))
    return Fraction(sd.m - sd.n - 2, 2), _compose_vv(sd, terms)


def _rational_coeff_fns(sd):
    """Scalar factors of ``I``, ``τ``, ``K`` in ``u (u - kappa) R(u)`` as functions of ``u``."""
    kappa, _ = rational_R(sd)
    if kappa is None:
        return [lambda x: x, lambda x: -1, None]
    return [lambda x: x * (x - kappa), lambda x: -(x - kappa), lambda x: x]


def check_rational_YBE(sd, report=None):
    """``R12(u-v) R13(u) R23(v) = R23(v) R13(u) R12(u-v)`` over two-variable polynomials."""
    if report is None:
        report = Report(sd.label(), "rational-YBE")
    _, K = rational_R(sd)
    mats = [identity(sd, "VV"), tau(sd), K]
    fns = _rational_coeff_fns(sd)
    used = [k for k in range(3) if fns[k] is not None]
    u, v = MLaurent.var(0, 2), MLaurent.var(1, 2)
    args = {"12": u - v, "13": u, "23": v}
    emb = {legs: [leg_embed(mats[k], legs) for k in range(3)] for legs in args}
    lhs = GradedMatrix(sd, "VVV")
    rhs = GradedMatrix(sd, "VVV")
    for a, b, c in product(used, used, used):
        scal = fns[a](args["12"]) * fns[b](args["13"]) * fns[c](args["23"])
        lhs = lhs + (emb["12"][a] @ emb["13"][b] @ emb["23"][c]).scale(scal)
        scal = fns[c](args["23"]) * fns[b](args["13"]) * fns[a](args["12"])
        rhs = rhs + (emb["23"][c] @ emb["13"][b] @ emb["12"][a]).scale(scal)
    report.zero("rational-YBE", lhs - rhs, "rational-YBE")
    return report


def _mp_scalar(x, t):
    from mpmath import mpf

    def num(c):
        c = Fraction(c)
        return mpf(c.numerator) / c.denominator

    if isinstance(x, (int, Fraction)):
        return num(x)
    return sum(num(c) * t**k for k, c in x.terms.items())


def rational_limit_check(sd, report=None, hbars=(Fraction(1, 1000), Fraction(1, 10000)), u0s=(2, 5), window=(5, 20), dps=50):
    """Numeric ``ħ -> 0`` limit of ``R(z)/(z - q^{-m+n+2})`` at ``q = e^{-ħ/2}``, ``z = e^{ħ u0}``.

    Each entry's residual against the rational R-matrix is classified by the
    factor it shrinks by between the two ``ħ`` values: inside ``window`` means
    first order, inside ``window`` times the step means second order (the
    linear term cancels).  Anything else fails, as does a max-norm ratio
    outside ``window``.  Entries exact to working precision are skipped.
    """
    from mpmath import exp, mp, mpf

    if report is None:
        report = Report(sd.label(), "rational-limit")
    spec = build_Rz(sd)
    kappa, K = rational_R(sd)
    step = hbars[0] / hbars[1]
    second = (float(window[0] * step), float(window[1] * step))
    summary = {}
    with mp.workdps(dps):
        tiny = mpf(10) ** (-(dps // 2))
        for u0 in u0s:
            rat = {}
            for (r, c), v in identity(sd, "VV").items():
                rat[(r, c)] = rat.get((r, c), 0) + Fraction(v)
            for (r, c), v in tau(sd).items():
                rat[(r, c)] = rat.get((r, c), 0) - Fraction(v, u0)
            if kappa is not None:
                for (r, c), v in K.items():
                    rat[(r, c)] = rat.get((r, c), 0) + Fraction(v) / (u0 - kappa)
            residuals = []
            for hb in hbars:
                h = _mp_scalar(hb, None)
                tq = exp(-h / 8)  # t = q^{1/4}
                z = exp(h * u0)
                dz = sum(_mp_scalar(cf, tq) * z**k for k, cf in enumerate(spec.den))
                norm = (z - _mp_scalar(spec.norm_point, tq)) * dz
                vals = {}
                for k, P in enumerate(spec.coeffs):
                    for key, v in P.items():
                        vals[key] = vals.get(key, 0) + _mp_scalar(v, tq) * z**k
                keys = set(vals) | set(rat)
                residuals.append({key: abs(vals.get(key, 0) / norm - _mp_scalar(rat.get(key, 0), tq)) for key in keys})
            first, second_order, bad = [], [], {}
            for key, r1 in residuals[0].items():
                r2 = residuals[1][key]
                if r1 < tiny and r2 < tiny:
                    continue
                ratio = r1 / r2 if r2 >= tiny else mpf("inf")
                if window[0] <= ratio <= window[1]:
                    first.append(float(ratio))
                elif second[0] <= ratio <= second[1]:
                    second_order.append(key)
                else:
                    bad[key] = float(ratio)
            maxes = [max(res.values(), default=mpf(0)) for res in residuals]
            max_ratio = float(maxes[0] / maxes[1]) if maxes[1] >= tiny else None
            summary[u0] = {
                "max_residual": [float(x) for x in maxes],
                "max_ratio": max_ratio,
                "first_order_entries": len(first),
                "first_order_ratio_range": (min(first), max(first)) if first else None,
                "second_order_entries": sorted((r + 1, c + 1) for r, c in second_order),
            }
            detail = None if not bad else ", ".join(f"({r + 1},{c + 1}): ratio {x:.3g}" for (r, c), x in sorted(bad.items())[:3])
            report.add(f"rational-limit[u0={u0}]", not bad, "rational-limit", detail)
            ok = max_ratio is not None and window[0] <= max_ratio <= window[1]
            report.add(f"rational-limit-max-norm[u0={u0}]", ok, "rational-limit", None if ok else f"ratio {max_ratio}")
    report.summary = summary
    return report


# -- suite ---------------------------------------------------------------------------------


def verify_affine(rep, report=None, ybe_mode="auto", points=None, a=ONE):
    """Run the affine suite (everything exact; the numeric limit has its own report)."""
    sd = rep.sd
    if report is None:
        report = Report(sd.label(), "affine")
    try:
        aff = build_affine_rep(rep, a=a, check=False)
    except ValueError as exc:
        report.add("affine-module", False, "affine-module", str(exc))
        return report
    verify_affine_rep(aff, report)
    spec = build_Rz(sd)
    check_baxterization(spec, report)
    check_affine_intertwining(spec, aff, aff, report)
    check_f0_by_supertranspose(spec, aff, report)
    check_e0_commutators(aff, report)
    check_spectral_YBE(spec, report, mode=ybe_mode, points=points)
    check_rational_YBE(sd, report)
    return report
