"""``rmat``: build, export and verify R-matrices from the command line.

Exit codes: 0 when every check passes, 1 when a verification fails,
2 for usage errors (bad flags, invalid instance, impossible evaluation).
"""

import json
import os
import sys
from concurrent.futures import ProcessPoolExecutor
from fractions import Fraction

import click

from . import superdata as sdm
from .exactring import QLaurent, QRat, ZRat
from .instances import extra_points, load_batch
from .report import Report

SUITES = ("relations", "finite", "factorization", "affine", "limit", "decomp")
DEFAULT_SEED = 20240601

__all__ = ["main", "run_suite", "run_batch", "SUITES", "export_matrix"]


# -- instance flags ----------------------------------------------------------------------


def instance_options(fn):
    opts = [
        click.option("--family", type=click.Choice(["osp", "glA"]), required=True),
        click.option("--m", "m", type=int, required=True),
        click.option("--n", "n", type=int, required=True),
        click.option("--parity", required=True, help="Parities, e.g. 101 (osp: v_1..v_s; glA: v_1..v_N)."),
        click.option("--theta", default=None, help="Comma-separated ±1 signs (length s or N)."),
    ]
    for opt in reversed(opts):
        fn = opt(fn)
    return fn


def _superdata(family, m, n, parity, theta):
    th = None
    if theta:
        try:
            th = [int(x) for x in theta.split(",")]
        except ValueError as exc:
            raise click.UsageError(f"bad --theta {theta!r}") from exc
    try:
        return sdm.build(family, m, n, parity, th)
    except sdm.SuperDataError as exc:
        raise click.UsageError(str(exc)) from exc


def _rational(text, flag):
    try:
        return Fraction(text)
    except (ValueError, ZeroDivisionError) as exc:
        raise click.UsageError(f"{flag} needs a rational number, got {text!r}") from exc


def _fourth_root(x):
    """Exact rational ``x**(1/4)`` or None."""
    from math import isqrt

    if x <= 0:
        return None
    out = []
    for part in (x.numerator, x.denominator):
        r = isqrt(isqrt(part))
        for cand in (r, r + 1):
            if cand**4 == part:
                out.append(cand)
                break
        else:
            return None
    return Fraction(out[0], out[1])


def _needs_fourth_root(M):
    for _, v in M.items():
        for x in _laurents(v):
            if any(k % 4 for k in x.terms):
                return True
    return False


def _laurents(v):
    if isinstance(v, QLaurent):
        return [v]
    if isinstance(v, QRat):
        return [v.num, v.den]
    if isinstance(v, ZRat):
        return [c for p in (v.num, v.den) for x in p for c in _laurents(x)]
    return []


def _target_t(M, eval_q, eval_t):
    """Value of ``t`` for a specialization: a Fraction, ``("q", q0)`` or None."""
    if eval_t is not None:
        return _rational(eval_t, "--eval-t")
    if eval_q is None:
        return None
    q0 = _rational(eval_q, "--eval-q")
    root = _fourth_root(q0)
    if root is not None:
        return root
    if _needs_fourth_root(M):
        raise click.UsageError(
            f"entries carry fractional powers of q; q = {q0} has no rational fourth root (use --eval-t)"
        )
    return ("q", q0)


def _eval_laurent(x, t0):
    if isinstance(t0, tuple):
        q0 = t0[1]
        return sum((c * q0 ** (k // 4) for k, c in x.terms.items()), Fraction(0))
    return x.eval(t0)


def _specialize(M, eval_q, eval_t, z0=None):
    """Substitute rational values for ``q`` (or ``t``) and ``z``."""
    t0 = _target_t(M, eval_q, eval_t)
    if t0 is None and z0 is None:
        return M

    def ev(v):
        if isinstance(v, ZRat):
            if z0 is None:
                raise click.UsageError("specializing R(z) in q also needs a rational --z")
            v = v.subs_z(z0)
        if t0 is None:
            return v
        if isinstance(v, QLaurent):
            return _eval_laurent(v, t0)
        if isinstance(v, QRat):
            return _eval_laurent(v.num, t0) / _eval_laurent(v.den, t0)
        return Fraction(v)

    return M.map(ev)


def export_matrix(M, fmt):
    if fmt == "csv":
        if M.sd.N > 5:
            raise click.UsageError("dense CSV export is limited to N <= 5")
        return M.to_csv()
    if any(isinstance(v, Fraction) for _, v in M.items()):
        # specialized matrices: plain rationals
        return json.dumps(
            {
                "dim": M.dim,
                "space": M.space,
                "ring": "Fraction",
                "superdata": M.sd.to_json(),
                "entries": [{"r": r + 1, "c": c + 1, "value": str(v)} for (r, c), v in M.items()],
            },
            indent=1,
        )
    return json.dumps(M.to_json(), indent=1)


def _emit(text, output):
    if output:
        with open(output, "w") as fh:
            fh.write(text)
    else:
        click.echo(text, nl=not text.endswith("\n"))


def _jobs(jobs):
    if jobs is not None:
        return max(1, jobs)
    env = os.environ.get("RMAT_JOBS")
    if env:
        try:
            return max(1, int(env))
        except ValueError as exc:
            raise click.UsageError(f"RMAT_JOBS must be an integer, got {env!r}") from exc
    return 1


# -- suites -------------------------------------------------------------------------------


def run_suite(sd, suite, ybe_mode="auto", points=None):
    """Run one suite on one instance and return its :class:`Report`."""
    from .repn import build_finrep, verify_relations, verify_serre

    rep = build_finrep(sd)
    report = Report(sd.label(), suite)
    if suite == "relations":
        verify_relations(rep, report=report)
        verify_serre(rep, report)
        from .raffine import build_affine_rep, verify_affine_rep

        verify_affine_rep(build_affine_rep(rep, check=False), report)
    elif suite == "finite":
        from .rfinite import verify_finite

        tpoints = None if points is None else [p[0] for p in points]
        verify_finite(rep, report, ybe_mode=ybe_mode, points=tpoints)
    elif suite == "factorization":
        from .lyndonpbw import verify_lyndon

        verify_lyndon(sd, rep, report)
    elif suite == "affine":
        from .raffine import verify_affine

        verify_affine(rep, report, ybe_mode=ybe_mode, points=points)
    elif suite == "limit":
        from .raffine import rational_limit_check

        rational_limit_check(sd, report)
    elif suite == "decomp":
        from .decomp import verify_decomp

        verify_decomp(rep, report)
    else:
        raise ValueError(f"unknown suite {suite!r}")
    return report.finish()


def _run_job(args):
    sd_json, suite, ybe_mode, points = args
    from .instances import spec_from_json

    sd = spec_from_json(sd_json)
    return run_suite(sd, suite, ybe_mode, points).to_json()


def run_batch(instances, suites, jobs=1, ybe_mode="auto", points=None):
    """Run suites over instances; results come back in instance order."""
    tasks = [(sd.to_json(), suite, ybe_mode, points) for sd in instances for suite in suites]
    if jobs > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            return list(pool.map(_run_job, tasks))
    return [_run_job(t) for t in tasks]


# -- commands ----------------------------------------------------------------------------------


@click.group(context_settings={"help_option_names": ["-h", "--help"]})
def main():
    """Exact R-matrices of orthosymplectic and A-type quantum supergroups."""


@main.command()
@instance_options
@click.option("--which", type=click.Choice(["r0", "rinf", "rj", "rjinv"]), default="r0")
@click.option("--eval-q", default=None, help="Specialize q to a rational value.")
@click.option("--eval-t", default=None, help="Specialize t = q^(1/4) to a rational value.")
@click.option("--format", "fmt", type=click.Choice(["json", "csv"]), default="json")
@click.option("-o", "--output", default=None)
def finite(family, m, n, parity, theta, which, eval_q, eval_t, fmt, output):
    """Export R0, Rinf or the ΔJ R-matrix (and its inverse)."""
    from .rfinite import build_R0, build_RJ, build_Rinf

    sd = _superdata(family, m, n, parity, theta)
    if which == "r0":
        M = build_R0(sd)
    elif which == "rinf":
        M = build_Rinf(sd)
    else:
        R, Rinv = build_RJ(sd)
        M = R if which == "rj" else Rinv
    _emit(export_matrix(_specialize(M, eval_q, eval_t), fmt), output)


@main.command()
@instance_options
@click.option("--z", "zval", default="symbolic", help="'symbolic' or a rational value of z.")
@click.option("--eval-q", default=None)
@click.option("--eval-t", default=None)
@click.option("--format", "fmt", type=click.Choice(["json", "csv"]), default="json")
@click.option("-o", "--output", default=None)
def affine(family, m, n, parity, theta, zval, eval_q, eval_t, fmt, output):
    """Export the spectral R-matrix R(z)."""
    from .raffine import build_Rz

    sd = _superdata(family, m, n, parity, theta)
    M = build_Rz(sd).Rz
    z0 = None if zval == "symbolic" else _rational(zval, "--z")
    if z0 == 1 and sd.is_osp:
        raise click.UsageError("R(z) has a pole at z = 1")
    _emit(export_matrix(_specialize(M, eval_q, eval_t, z0), fmt), output)


@main.group()
def rep():
    """Generator matrices of the vector representation."""


@rep.command("dump")
@instance_options
@click.option("--generator", default=None, help="Only this generator (e.g. e1, f2, k1, kinv1, e0).")
@click.option("-o", "--output", default=None)
def rep_dump(family, m, n, parity, theta, generator, output):
    """Sparse JSON of every generator matrix keyed by name."""
    from .raffine import build_affine_rep
    from .repn import UnknownGenerator, build_finrep

    sd = _superdata(family, m, n, parity, theta)
    r = build_finrep(sd)
    build_affine_rep(r, check=False)
    names = r.generator_names(include_affine=True)
    if generator is not None:
        if generator not in names:
            raise click.UsageError(f"unknown generator {generator!r}; choose from {', '.join(names)}")
        names = [generator]
    try:
        data = {name: r.gen(name).mat.to_json() for name in names}
    except UnknownGenerator as exc:
        raise click.UsageError(str(exc)) from exc
    _emit(json.dumps(data, indent=1), output)


@main.group()
def lyndon():
    """Dominant Lyndon words."""


@lyndon.command("list")
@instance_options
@click.option("--format", "fmt", type=click.Choice(["text", "json"]), default="text")
def lyndon_list(family, m, n, parity, theta, fmt):
    """Dominant Lyndon words with degrees, in lexicographic order."""
    _list(_superdata(family, m, n, parity, theta), "lyndon", fmt)


@main.group()
def theta():
    """The canonical tensor Theta."""


@theta.command("build")
@instance_options
@click.option("--check", "checks", default="closed,rmatrix", help="Comma-separated: closed, rmatrix.")
@click.option("--format", "fmt", type=click.Choice(["json", "csv"]), default="json")
@click.option("-o", "--output", default=None)
def theta_build(family, m, n, parity, theta, checks, fmt, output):
    """Ordered product of local factors; optionally checked against closed forms."""
    from .lyndonpbw import FactorizationMismatch, theta_factorized
    from .repn import build_finrep

    sd = _superdata(family, m, n, parity, theta)
    wanted = tuple(c for c in checks.split(",") if c)
    bad = set(wanted) - {"closed", "rmatrix"}
    if bad:
        raise click.UsageError(f"unknown checks {sorted(bad)}")
    try:
        M = theta_factorized(sd, build_finrep(sd), check=wanted)
    except FactorizationMismatch as exc:
        click.echo(f"FAIL: {exc}", err=True)
        sys.exit(1)
    _emit(export_matrix(M, fmt), output)


@main.group()
def decomp():
    """Tensor-square decomposition."""


@decomp.command("verify")
@instance_options
def decomp_verify(family, m, n, parity, theta):
    """Per-instance JSON report of the decomposition checks."""
    sd = _superdata(family, m, n, parity, theta)
    report = run_suite(sd, "decomp")
    click.echo(json.dumps(report.to_json(), indent=1))
    sys.exit(0 if report.ok else 1)


@main.command()
@click.argument("suite", type=click.Choice(SUITES + ("all",)))
@click.option("--batch", default=None, help="Batch JSON file; 'default' for the shipped matrix.")
@click.option("--family", type=click.Choice(["osp", "glA"]), default=None)
@click.option("--m", "m", type=int, default=None)
@click.option("--n", "n", type=int, default=None)
@click.option("--parity", default=None)
@click.option("--theta", default=None)
@click.option("--ybe-mode", type=click.Choice(["auto", "symbolic", "specialize"]), default="auto")
@click.option("--points", type=int, default=None, help="Number of exact specialization points.")
@click.option("--seed", type=int, default=DEFAULT_SEED, show_default=True)
@click.option("--jobs", type=int, default=None, help="Worker processes (default: $RMAT_JOBS or 1).")
@click.option("--format", "fmt", type=click.Choice(["json", "csv"]), default="json")
@click.option("-o", "--output", default=None)
def verify(suite, batch, family, m, n, parity, theta, ybe_mode, points, seed, jobs, fmt, output):
    """Run verification suites; exit 1 if anything fails.

    With no instance flags and no --batch, the shipped acceptance matrix is used.
    """
    from .raffine import DEFAULT_YBE_POINTS

    given = [x is not None for x in (family, m, n, parity)]
    if any(given) and not all(given):
        raise click.UsageError("--family, --m, --n and --parity go together")
    if all(given) and batch:
        raise click.UsageError("give either instance flags or --batch")
    if all(given):
        instances = [_superdata(family, m, n, parity, theta)]
    else:
        try:
            instances = load_batch(None if batch in (None, "default", "default.json") else batch)
        except (OSError, ValueError, KeyError, sdm.SuperDataError) as exc:
            raise click.UsageError(f"cannot read batch: {exc}") from exc
    pts = None
    if points is not None:
        if points < 1:
            raise click.UsageError("--points must be positive")
        pts = extra_points(points, seed, DEFAULT_YBE_POINTS)
    suites = SUITES if suite == "all" else (suite,)
    results = run_batch(instances, suites, _jobs(jobs), ybe_mode, pts)
    ok = all(r["status"] == "pass" for r in results)
    if fmt == "csv":
        lines = ["instance,suite,check,status,residual"]
        for r in results:
            for c in r["checks"]:
                res = c.get("residual", "").replace('"', "'")
                lines.append(f'{r["instance"]},{r["suite"]},{c["id"]},{c["status"]},"{res}"')
        text = "\n".join(lines) + "\n"
    else:
        text = json.dumps({"status": "pass" if ok else "fail", "reports": results}, indent=1)
    _emit(text, output)
    sys.exit(0 if ok else 1)


def _list(sd, what, fmt):
    from .lyndonpbw import dominant_lyndon, pairing_J_closed

    if what == "roots":
        rows = [(sd.weight_str(r.weight), r.parity) for r in _roots_in_lex_order(sd)]
        data = [{"root": w, "parity": p} for w, p in rows]
        text = "\n".join(f"{w}\t{'odd' if p else 'even'}" for w, p in rows)
    elif what == "lyndon":
        data = [{"word": list(w), "degree": sd.weight_str(d)} for w, d in dominant_lyndon(sd)]
        text = "\n".join(f"[{' '.join(map(str, w))}]\t{sd.weight_str(d)}" for w, d in dominant_lyndon(sd))
    else:
        data, lines = [], []
        for w, d in dominant_lyndon(sd):
            val = pairing_J_closed(sd, d)
            data.append({"word": list(w), "degree": sd.weight_str(d), "pairing": str(val)})
            lines.append(f"[{' '.join(map(str, w))}]\t{sd.weight_str(d)}\t{val}")
        text = "\n".join(lines)
    click.echo(json.dumps(data, indent=1) if fmt == "json" else text)


def _roots_in_lex_order(sd):
    from .lyndonpbw import dominant_lyndon

    by_weight = {r.weight: r for r in sd.reduced_positive_roots}
    return [by_weight[d] for _, d in dominant_lyndon(sd)]


@main.command("list")
@click.argument("what", type=click.Choice(["roots", "lyndon", "pairings"]))
@instance_options
@click.option("--format", "fmt", type=click.Choice(["text", "json"]), default="text")
def list_cmd(what, family, m, n, parity, theta, fmt):
    """Positive roots in Lyndon order, dominant Lyndon words, or the pairing table."""
    _list(_superdata(family, m, n, parity, theta), what, fmt)


if __name__ == "__main__":  # pragma: no cover
    main()
