import numpy as np
import pytest

from seqprod import parse_algebra

ALGEBRA_SHORTHANDS = ["real:3", "complex:3", "quat:2", "spin:4", "sum(complex:2,real:3)"]
MATRIX_SHORTHANDS = ["real:3", "complex:3", "quat:2"]


@pytest.fixture(params=ALGEBRA_SHORTHANDS)
def algebra(request):
    return parse_algebra(request.param)


@pytest.fixture(params=MATRIX_SHORTHANDS)
def matrix_algebra(request):
    return parse_algebra(request.param)


def rng_for(*key):
    return np.random.default_rng(key)
