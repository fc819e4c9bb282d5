import zlib

import numpy as np
import pytest

from halfgcd.arith import plan_for
from halfgcd.field import prime_field


@pytest.fixture
def F():
    return prime_field()


@pytest.fixture
def plan(F):
    return plan_for(F)


@pytest.fixture
def rng(request):
    # one stream per test, stable across runs
    return np.random.default_rng(zlib.crc32(request.node.name.encode()))
