"""R-matrices of osp(1|2) on its 3-dimensional vector representation.

Prints R0, the eigenvalues of tau R0 on the highest weight vectors and the
corner entry of the spectral R-matrix.  Entries are shown in t = q^(1/4).
"""

from osprmat import build, build_finrep, build_R0, build_Rz, eigenvalues, tau, verify_finite
from osprmat.superlinalg import identity

sd = build("osp", 1, 2, "1")
R0 = build_R0(sd)

print(f"{sd.label()}: N = {sd.N}, parities {sd.parity}")
print("nonzero entries of R0:")
for (r, c), v in R0.items():
    print(f"  ({r + 1},{c + 1})  {v}")

lam1, lam2, lam3 = eigenvalues(sd)
print(f"eigenvalues of tau R0: {lam1}, {lam2}, {lam3}")

Rhat = tau(sd) @ R0
I = identity(sd, "VV")
cubic = (Rhat - I.scale(lam1)) @ (Rhat - I.scale(lam2)) @ (Rhat - I.scale(lam3))
print("(tau R0 - l1)(tau R0 - l2)(tau R0 - l3) = 0:", cubic.is_zero())

spec = build_Rz(sd)
print("R(z) entry (1,1):", spec.Rz.get(0, 0))

report = verify_finite(build_finrep(sd))
print(f"finite suite: {len(report.checks)} checks, ok = {report.ok}")
