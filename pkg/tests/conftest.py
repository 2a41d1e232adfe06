import pytest

from tripop import CouplingRatios, IntegratorConfig, OddPair, build_dressed_basis, condition_from_odd_pair


@pytest.fixture(scope="session")
def cond_33():
    """The alpha = 0 family member (n1 = n2 = 3), A(t0) = pi/sqrt(2)."""
    return condition_from_odd_pair(OddPair(1, 1))


@pytest.fixture(scope="session")
def cond_15():
    """The (n1, n2) = (1, 5) member, alpha = +2.530, A(t0) = 1.656."""
    return condition_from_odd_pair(OddPair(-1, 3))


@pytest.fixture(scope="session")
def cond_351():
    """The (n1, n2) = (35, 1) member, alpha = -8.128, A(t0) = 4.381."""
    return condition_from_odd_pair(OddPair(23, -11))


@pytest.fixture(scope="session")
def basis_33():
    return build_dressed_basis(CouplingRatios(alpha=0.0, beta=1.0))


@pytest.fixture(scope="session")
def fast_config():
    """Integrator setting for bulk checks; still far below 1e-6 deviation."""
    return IntegratorConfig(steps_per_period=8000)
