"""Exact R-matrices for orthosymplectic and A-type quantum supergroups.

Typical use::

    from osprmat import build, build_finrep, build_R0, verify_finite
    sd = build("osp", 1, 2, "1")
    report = verify_finite(build_finrep(sd))
    assert report.ok
"""

from .decomp import build_bases, verify_decomp
from .exactring import ONE, Q, QINV, MLaurent, QLaurent, QRat, ZRat, qpow
from .instances import acceptance_instances
from .lyndonpbw import dominant_lyndon, theta_factorized, verify_lyndon
from .raffine import build_affine_rep, build_Rz, rational_limit_check, verify_affine
from .report import Report
from .repn import build_finrep, coproduct_action, highest_vectors
from .rfinite import build_R0, build_Rinf, build_RJ, eigenvalues, verify_finite
from .superdata import SuperData, admissible_parities, build
from .superlinalg import GradedMatrix, kron_graded, tau

__all__ = [
    "ONE",
    "Q",
    "QINV",
    "QLaurent",
    "QRat",
    "ZRat",
    "MLaurent",
    "qpow",
    "SuperData",
    "build",
    "admissible_parities",
    "GradedMatrix",
    "kron_graded",
    "tau",
    "build_finrep",
    "coproduct_action",
    "highest_vectors",
    "build_R0",
    "build_Rinf",
    "build_RJ",
    "eigenvalues",
    "verify_finite",
    "dominant_lyndon",
    "theta_factorized",
    "verify_lyndon",
    "build_affine_rep",
    "build_Rz",
    "verify_affine",
    "rational_limit_check",
    "build_bases",
    "verify_decomp",
    "acceptance_instances",
    "Report",
]

__version__ = "0.1.0"
