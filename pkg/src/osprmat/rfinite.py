"""Finite R-matrices on ``V⊗V`` and their verification.

``R0`` and ``Rinf`` are assembled term by term from closed formulas in
``E_ij ⊗ E_kl`` form.  ``tau @ R0`` is the braiding of ``V⊗V`` for the
coproduct ``Δ``; conjugating by ``f̃^{1/2}`` gives the version for ``ΔJ``.
"""

from dataclasses import dataclass
from fractions import Fraction

from .exactring import ONE, Q, QINV, qpow
from .repn import coproduct_action, ftilde_half, highest_vectors
from .report import Report
from .superlinalg import (
    _compose_vv,
    identity,
    leg_embed,
    partial_supertranspose,
    supertranspose,
    tau,
    vec_add,
    vec_scale,
)

__all__ = [
    "NotEigenvector",
    "FiniteRMatrices",
    "build_R0",
    "build_Rinf",
    "build_RJ",
    "build_RJinv_closed",
    "finite_rmatrices",
    "eigenvalues",
    "check_intertwining",
    "eigen_check",
    "check_constant_YBE",
    "verify_finite",
    "DEFAULT_POINTS",
]

DEFAULT_POINTS = (Fraction(2), Fraction(3), Fraction(-2, 3), Fraction(5, 4), Fraction(7, 3), Fraction(-5, 2), Fraction(11, 7))


class NotEigenvector(AssertionError):
    def __init__(self, message, residual=None):
        super().__init__(message)
        self.residual = residual


def _sign(b):
    return -1 if b else 1


def _terms(sd, which, jantzen=False):
    """Coefficients ``(i, j, k, l, x)`` of ``R = sum x E_ij ⊗ E_kl``."""
    N = sd.N
    inf = which == "inf"
    half = (qpow(Fraction(1, 2)) - qpow(Fraction(-1, 2))) * (1 if inf else -1)
    full = (Q - QINV) * (1 if inf else -1)
    out = [(i, i, k, k, ONE) for i in range(1, N + 1) for k in range(1, N + 1)]
    for i in range(1, N + 1):
        e2 = sd.eps_pair(i, i)
        sgn = 1 if inf else -1
        out.append((i, i, i, i, half * qpow(Fraction(sgn * e2, 2)) * sd.sgn(i)))
        if sd.is_osp:
            ip = sd.prime(i)
            out.append((i, i, ip, ip, -half * qpow(Fraction(-sgn * e2, 2)) * sd.sgn(i)))
    for i in range(1, N + 1):
        for j in range(1, N + 1):
            if (i > j) != inf or i == j:
                continue
            out.append((i, j, j, i, full * sd.sgn(j)))
            if sd.is_osp:
                sign = _sign(sd.par(j) and (sd.par(i) + sd.par(j)) % 2)
                coeff = qpow(sd.rho_pair(sd.wsub(sd.eps(i), sd.eps(j))))
                if jantzen:
                    coeff = coeff * qpow(Fraction(-sd.eps_pair(i, i) + sd.eps_pair(j, j), 2))
                x = -full * sd.sgn(j) * sign * sd.th(i) * sd.th(j) * coeff
                out.append((i, j, sd.prime(i), sd.prime(j), x))
    return out


def build_R0(sd):
    """``R0``, with ``tau @ R0`` the braiding for the coproduct ``Δ``."""
    return _compose_vv(sd, _terms(sd, "0"))


def build_Rinf(sd):
    """``Rinf``, with ``tau @ Rinf`` the inverse braiding."""
    return _compose_vv(sd, _terms(sd, "inf"))


def build_RJ(sd):
    """``(R, R^{-1})`` for the coproduct ``ΔJ`` obtained by ``f̃^{1/2}``-conjugation."""
    fh, fhinv = ftilde_half(sd), ftilde_half(sd, -1)
    t = tau(sd)
    R = fhinv @ build_R0(sd) @ fh
    Rinv = t @ fhinv @ build_Rinf(sd) @ fh @ t
    return R, Rinv


def build_RJ_closed(sd):
    """``R`` for ``ΔJ`` written out term by term."""
    return _compose_vv(sd, _terms(sd, "0", jantzen=True))


def build_RJinv_closed(sd):
    """``R^{-1}`` for ``ΔJ`` written out term by term, summing over ``i < j``."""
    N = sd.N
    half = qpow(Fraction(1, 2)) - qpow(Fraction(-1, 2))
    full = Q - QINV
    out = [(i, i, k, k, ONE) for i in range(1, N + 1) for k in range(1, N + 1)]
    for i in range(1, N + 1):
        e2 = sd.eps_pair(i, i)
        out.append((i, i, i, i, half * qpow(Fraction(e2, 2)) * sd.sgn(i)))
        if sd.is_osp:
            ip = sd.prime(i)
            out.append((i, i, ip, ip, -half * qpow(Fraction(-e2, 2)) * sd.sgn(i)))
    for i in range(1, N + 1):
        for j in range(i + 1, N + 1):
            out.append((i, j, j, i, full * sd.sgn(j)))
            if sd.is_osp:
                sign = _sign(sd.par(j) and (sd.par(i) + sd.par(j)) % 2)
                coeff = qpow(-sd.rho_pair(sd.wsub(sd.eps(i), sd.eps(j))))
                coeff = coeff * qpow(Fraction(-sd.eps_pair(i, i) + sd.eps_pair(j, j), 2))
                out.append((i, j, sd.prime(i), sd.prime(j), -full * sd.sgn(j) * sign * sd.th(i) * sd.th(j) * coeff))
    return _compose_vv(sd, out)


def eigenvalues(sd):
    """``(λ1, λ2, λ3)`` of ``tau @ R0`` on the highest weight vectors (``λ3`` is None for A-type)."""
    s1 = sd.sgn(1)
    lam1 = qpow(-s1) * s1
    lam2 = qpow(s1) * (-s1)
    lam3 = qpow(sd.m - sd.n - 1) if sd.is_osp else None
    return lam1, lam2, lam3


@dataclass
class FiniteRMatrices:
    R0: object
    Rinf: object
    RJ: object
    RJinv: object
    lambdas: tuple


def finite_rmatrices(sd):
    R, Rinv = build_RJ(sd)
    return FiniteRMatrices(build_R0(sd), build_Rinf(sd), R, Rinv, eigenvalues(sd))


# -- checks -------------------------------------------------------------------------


def check_intertwining(Rx, rep, variant="Δ", report=None, names=None):
    """``Rx Δ(g) = Δop(g) Rx`` for every generator ``g``."""
    sd = rep.sd
    if report is None:
        report = Report(sd.label(), "intertwining")
    op = {"Δ": "Δop", "ΔJ": "ΔJop"}[variant]
    for name in names or rep.generator_names():
        lhs = Rx @ coproduct_action(rep, name, variant)
        rhs = coproduct_action(rep, name, op) @ Rx
        report.zero(f"intertwine[{variant},{name}]", lhs - rhs, "intertwiner")
    return report


def check_f_by_supertranspose(Rinf, rep, report):
    """Second route to the ``f``-intertwining of ``Rinf`` via ``st1 st2``."""
    sd = rep.sd
    t = tau(sd)
    st12 = partial_supertranspose(partial_supertranspose(Rinf, 1), 2)
    report.zero("Rinf-st-symmetry", Rinf - t @ st12 @ t, "Rinf-supertranspose")
    for a in range(1, rep.s + 1):
        e, f = rep.gen(f"e{a}").mat, rep.gen(f"f{a}").mat
        k = rep.gen(f"k{a}").mat
        report.zero(f"k{a}^st", supertranspose(k) - k, "supertranspose-k")
        est = supertranspose(e)
        (r, c), v = f.first_nonzero()
        ratio = est.get(r, c) / v if est.get(r, c) else None
        ok = ratio is not None and (est - f.scale(ratio)).is_zero()
        report.add(f"e{a}^st~f{a}", ok, "supertranspose-e")
        if not ok:
            continue
        # st1 st2 of Rinf Δ(e) = Δop(e) Rinf, conjugated by tau, gives the f relation
        lhs = Rinf @ coproduct_action(rep, f"f{a}")
        rhs = coproduct_action(rep, f"f{a}", "Δop") @ Rinf
        report.zero(f"intertwine-f-route[{a}]", lhs - rhs, "intertwiner-f")
    return report


def eigen_check(Rhat, hv, sd=None, expected=None):
    """Verify ``Rhat w_k = λ_k w_k`` and return the λ's read off the vectors."""
    sd = sd or Rhat.sd
    vecs = [hv.w1, hv.w2] + ([hv.w3] if hv.w3 is not None else [])
    lams = []
    for k, w in enumerate(vecs):
        out = Rhat @ w
        r = min(w)
        lam = out.get(r, 0) / w[r] if out.get(r) else 0
        if hasattr(lam, "is_laurent") and lam.is_laurent():
            lam = lam.to_laurent()
        res = vec_add(out, vec_scale(-lam, w))
        if any(res.values()):
            raise NotEigenvector(f"w{k + 1} is not an eigenvector", res)
        lams.append(lam)
    if expected is not None:
        for k, (got, want) in enumerate(zip(lams, expected)):
            if want is not None and got != want:
                raise NotEigenvector(f"λ{k + 1} = {got}, expected {want}")
    return tuple(lams) + ((None,) if len(lams) == 2 else ())


def _specialize(M, t0):
    return M.eval_q(t0)


def check_constant_YBE(R, report=None, mode="auto", points=None, braid=True):
    """``R12 R13 R23 = R23 R13 R12`` and the braid form for ``tau @ R``.

    ``mode`` is ``"symbolic"``, ``"specialize"`` or ``"auto"`` (symbolic for
    ``N <= 5``).  Specializations substitute rational values of ``t``.
    """
    sd = R.sd
    if report is None:
        report = Report(sd.label(), "constant-YBE")
    if mode == "auto":
        mode = "symbolic" if sd.N <= 5 else "specialize"
    if mode == "symbolic":
        cases = [("sym", R)]
    else:
        pts = list(points or DEFAULT_POINTS[:5])
        cases = [(f"t={p}", _specialize(R, p)) for p in pts]
    t = tau(sd)
    for label, Rm in cases:
        R12, R13, R23 = (leg_embed(Rm, legs) for legs in ("12", "13", "23"))
        report.zero(f"YBE[{label}]", R12 @ R13 @ R23 - R23 @ R13 @ R12, "YBE")
        if braid:
            Rh = t @ Rm
            B12, B23 = leg_embed(Rh, "12"), leg_embed(Rh, "23")
            report.zero(f"braid[{label}]", B12 @ B23 @ B12 - B23 @ B12 @ B23, "braid")
    return report


def verify_finite(rep, report=None, ybe_mode="auto", points=None):
    """Run the finite R-matrix suite on one instance."""
    sd = rep.sd
    if report is None:
        report = Report(sd.label(), "finite")
    R0, Rinf = build_R0(sd), build_Rinf(sd)
    t = tau(sd)
    I = identity(sd, "VV")
    check_intertwining(R0, rep, report=report)
    check_intertwining(Rinf, rep, report=report)
    check_f_by_supertranspose(Rinf, rep, report)
    report.zero("tauR0*tauRinf", (t @ R0) @ (t @ Rinf) - I, "inverse")
    report.zero("tauR0tau=bar(Rinf)", t @ R0 @ t - Rinf.bar(), "R0-vs-Rinf")
    RJ, RJinv = build_RJ(sd)
    report.zero("RJ*RJinv", RJ @ RJinv - I, "RJ-inverse")
    report.zero("RJ-closed", RJ - build_RJ_closed(sd), "RJ-closed")
    report.zero("RJinv-closed", RJinv - build_RJinv_closed(sd), "RJinv-closed")
    check_intertwining(RJ, rep, variant="ΔJ", report=report)
    if not sd.is_osp:
        report.zero("RJ=R0", RJ - R0, "RJ-A-type")
    hv = highest_vectors(rep)
    lam = eigenvalues(sd)
    try:
        got = eigen_check(t @ R0, hv, sd, lam)
        report.add("eigenvalues", True, "eigenvalues")
        if sd.is_osp:
            report.add("λ3", got[2] == lam[2], "eigenvalues")
    except NotEigenvector as exc:
        report.add("eigenvalues", False, "eigenvalues", str(exc))
    # inverse braiding acts by the reciprocal eigenvalues
    for k, w in enumerate([hv.w1, hv.w2] + ([hv.w3] if sd.is_osp else [])):
        res = vec_add((t @ Rinf) @ w, vec_scale(-lam[k] ** -1, w))
        report.zero(f"tauRinf w{k + 1}", res, "eigenvalues-inverse")
    if sd.is_osp:
        s1 = sd.sgn(1)
        res = vec_add((t @ R0) @ hv.w3_tilde, vec_scale(-(qpow(s1) * s1), hv.w3_hat))
        report.zero("tauR0 w3~", res, "eigen-w3-tilde")
        res = vec_add((t @ Rinf) @ hv.w3_hat, vec_scale(-(qpow(-s1) * s1), hv.w3_tilde))
        report.zero("tauRinf w3^", res, "eigen-w3-hat")
    check_constant_YBE(R0, report, mode=ybe_mode, points=points)
    return report
