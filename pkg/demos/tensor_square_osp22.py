"""The n = m case: V (x) V for osp(2|2) is not a direct sum of three pieces.

For both parity sequences this prints the summand dimensions, the
dimension of the submodule generated by various highest vectors and the
explicit zero-weight combination coefficients.
"""

from osprmat import build, build_finrep
from osprmat.decomp import WeightSpans, build_bases, closure_dimension, combination_coefficients
from osprmat.repn import coproduct_action, highest_vectors

for parity in ("01", "10"):
    sd = build("osp", 2, 2, parity)
    rep = build_finrep(sd)
    dec = build_bases(sd, rep)
    hv = highest_vectors(rep)
    mats = [coproduct_action(rep, f"{k}{a}") for k in "ef" for a in range(1, sd.s + 1)]
    plus = WeightSpans(sd, dec.vectors(1))
    minus = WeightSpans(sd, dec.vectors(-1))
    both = WeightSpans(sd, dec.vectors(1) + dec.vectors(-1))
    print(sd.label())
    print(f"  dim W+ = {plus.dim()}, dim W- = {minus.dim()}, dim(W+ + W-) = {both.dim()} of {sd.N ** 2}")
    print(f"  w3 in W+: {plus.contains(hv.w3)}, w3 in W-: {minus.contains(hv.w3)}")
    for name, seeds in (
        ("w1, w2, w3", [hv.w1, hv.w2, hv.w3]),
        ("w1, w2, v1 (x) vN", [hv.w1, hv.w2, hv.w3_tilde]),
        ("w1, w2, vN (x) v1", [hv.w1, hv.w2, hv.w3_hat]),
    ):
        print(f"  submodule generated by {name}: dim {closure_dimension(sd, mats, seeds)}")
    bp, bm, bs = combination_coefficients(sd)
    print(f"  combination coefficients: b+ = {bp}, b- = {bm}, b_s = {bs}")
