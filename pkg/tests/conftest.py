import pytest
from hypothesis import settings

from osprmat import superdata as sdm

settings.register_profile("default", max_examples=60, deadline=None)
settings.load_profile("default")

SMALL = [
    ("osp", 1, 2, "1"),
    ("osp", 3, 2, "10"),
    ("osp", 2, 2, "01"),
    ("osp", 2, 2, "10"),
    ("osp", 4, 2, "010"),
    ("glA", 1, 1, "01"),
    ("glA", 2, 1, "010"),
]


def make(fam, m, n, parity):
    return sdm.build(fam, m, n, parity)


@pytest.fixture(params=SMALL, ids=lambda p: f"{p[0]}{p[1]}_{p[2]}_{p[3]}")
def small_sd(request):
    return make(*request.param)
