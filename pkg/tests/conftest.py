import numpy as np
import pytest
from hypothesis import HealthCheck, settings

from ttosym.inner import BlaschkeProduct
from ttosym.modelspace import build_model_space

settings.register_profile("default", deadline=None, max_examples=40,
                          suppress_health_check=[HealthCheck.too_slow])
settings.load_profile("default")


@pytest.fixture
def rng():
    return np.random.default_rng(20240601)


def space_of(*zeros, M=2048):
    return build_model_space(BlaschkeProduct(tuple(zeros)), M)


@pytest.fixture
def chi2():
    return build_model_space(BlaschkeProduct.monomial(2))


@pytest.fixture
def chi3():
    return build_model_space(BlaschkeProduct.monomial(3))


def pytest_terminal_summary(terminalreporter):
    from . import test_acceptance

    if test_acceptance.RESULTS:
        terminalreporter.section("acceptance criteria")
        for line in test_acceptance.RESULTS:
            terminalreporter.write_line(line)
