import pytest

from nonstatic_phase import make_params, recommended_q_grid


@pytest.fixture(scope="session")
def fig1b():
    """Nonstatic packet of the density-comparison figure: A=2.5, B=0.5, n=5, omega=1."""
    return make_params(2.5, 0.5, omega=1.0)


@pytest.fixture(scope="session")
def fig2b():
    return make_params(0.5, 2.5, omega=0.5)


@pytest.fixture(scope="session")
def fig2c():
    return make_params(0.1, 10.0, omega=1.0)


@pytest.fixture(scope="session")
def static_params():
    return make_params(1.0, 1.0, omega=0.5)


@pytest.fixture(scope="session")
def grid_fig1b(fig1b):
    return recommended_q_grid(fig1b, 10)


@pytest.fixture(scope="session")
def grid_fig2b(fig2b):
    return recommended_q_grid(fig2b, 5)


@pytest.fixture(scope="session")
def grid_fig2c(fig2c):
    return recommended_q_grid(fig2c, 10)
