"""The default instance matrix and batch-file helpers."""

import json
import random
from fractions import Fraction
from importlib import resources

from . import superdata as sdm

__all__ = [
    "OSP_SIZES",
    "GLA_SIZES",
    "acceptance_instances",
    "default_batch",
    "load_batch",
    "spec_from_json",
    "extra_points",
]

OSP_SIZES = ((1, 2), (3, 2), (2, 2), (4, 2), (2, 4), (1, 4), (3, 4), (5, 2))
GLA_SIZES = ((1, 1), (2, 1), (1, 2), (2, 2))


def acceptance_instances():
    """Every osp and A-type instance of the default matrix, default theta."""
    out = []
    for fam, sizes in ((sdm.OSP, OSP_SIZES), (sdm.GLA, GLA_SIZES)):
        for m, n in sizes:
            for p in sdm.admissible_parities(fam, m, n):
                out.append(sdm.build(fam, m, n, p))
    return out


def spec_from_json(d):
    """Build :class:`SuperData` from ``{family, m, n, parity[, theta]}``.

    ``parity`` is a string like ``"101"`` or a list; for osp it may be the
    length-``s`` prefix or the full sequence.
    """
    fam, m, n = d["family"], int(d["m"]), int(d["n"])
    par = sdm.parse_parity(d["parity"])
    if fam == sdm.OSP and len(par) == m + n:
        par = par[: (m + n) // 2]
    return sdm.build(fam, m, n, par, d.get("theta"))


def default_batch():
    """The shipped batch file (the acceptance matrix) as a list of dicts."""
    text = resources.files("osprmat").joinpath("data/default_batch.json").read_text()
    return json.loads(text)["instances"]


def load_batch(path=None):
    entries = default_batch() if path is None else json.loads(open(path).read())
    if isinstance(entries, dict):
        entries = entries["instances"]
    return [spec_from_json(d) for d in entries]


def extra_points(count, seed, start=()):
    """Extend ``start`` to ``count`` rational ``(t, z1, z2)`` points using a seeded RNG."""
    pts = list(start)[:count]
    rng = random.Random(seed)
    while len(pts) < count:
        t0, z1, z2 = (Fraction(rng.randint(2, 19), rng.randint(1, 11)) for _ in range(3))
        if t0 != 1 and len({t0, z1, z2}) == 3:
            pts.append((t0, z1, z2))
    return pts
