"""Shared fixtures: the standard collection of test root vectors.

The collection spans pure polynomial, trigonometric, hyperbolic, and mixed
vectors at orders 3 through 5, all conjugate-symmetric and admissible.
"""

import math
from functools import lru_cache

import pytest

from expinterp import RootVector, make_interpolator

TWO_PI = 2.0 * math.pi


def _trig(*freqs_over_m):
    roots = []
    for q in freqs_over_m:
        if q == 0:
            roots.append(0.0)
        else:
            roots.extend([1j * TWO_PI * q, -1j * TWO_PI * q])
    return tuple(roots)


# name -> roots; n0 spans 3..5
TEST_VECTORS = {
    "quadratic": (0.0, 0.0, 0.0),
    "cubic": (0.0, 0.0, 0.0, 0.0),
    "quartic": (0.0, 0.0, 0.0, 0.0, 0.0),
    "trig_third": _trig(0, 1 / 3),
    "trig_fifth": _trig(0, 1 / 5),
    "trig_two_pairs": _trig(1 / 5, 2 / 5),
    "trig_high": _trig(0, 2 / 5),
    "hyperbolic_wide": (0.0, TWO_PI / 3, -TWO_PI / 3),
    "hyperbolic_narrow": (0.0, 1 / 3, -1 / 3),
    "mixed_trig": (0.0, 0.0) + _trig(1 / 3),
    "mixed_hyperbolic": (0.0, 0.0, 0.5, -0.5),
    "mixed_quintic": (0.0, 0.0, 0.0) + _trig(1 / 7),
}


@lru_cache(maxsize=None)
def interpolator_for(name: str):
    return make_interpolator(RootVector(TEST_VECTORS[name]))


@pytest.fixture(params=sorted(TEST_VECTORS), ids=sorted(TEST_VECTORS))
def vector_name(request):
    return request.param
