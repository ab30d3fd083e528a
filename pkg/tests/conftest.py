from math import gcd

import numpy as np
import pytest
from hypothesis import HealthCheck, settings

from isoweave import double, make_satin, make_twill, twillin_611

settings.register_profile(
    "repo", derandomize=True, deadline=None, max_examples=60,
    suppress_health_check=[HealthCheck.too_slow],
)
settings.load_profile("repo")


def base_corpus():
    twills = [make_twill(n) for n in range(2, 11)]
    satins = [make_satin(n, s) for n in range(5, 14) for s in range(2, n - 1) if gcd(n, s) == 1]
    return twills + satins


def corpus():
    """Twills of order <= 10, satins of order <= 13, their doublings and 6-1-1."""
    base = base_corpus()
    return base + [double(d) for d in base] + [twillin_611()]


CORPUS = corpus()


def ids(d):
    return d.label.replace(" ", "_")


@pytest.fixture
def satin53():
    return make_satin(5, 3)


def random_cells(draw_bits, rows, cols):
    return np.array(draw_bits, dtype=bool).reshape(rows, cols)
