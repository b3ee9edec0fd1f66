import math

import numpy as np
import pytest
from hypothesis import settings

from varhardy.exponents import constant_exponent, counterexample_exponent, lh_demo_exponent

settings.register_profile("suite", max_examples=50, deadline=None, derandomize=True)
settings.load_profile("suite")

TWO_PI = 2.0 * math.pi


@pytest.fixture(scope="session")
def sec3():
    return counterexample_exponent()


@pytest.fixture(scope="session")
def p2():
    return constant_exponent(2.0)


@pytest.fixture(scope="session")
def lh_demo():
    return lh_demo_exponent()


@pytest.fixture()
def rng():
    return np.random.default_rng(20240811)
