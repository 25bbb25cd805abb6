import pytest

from satjac.constructions import DEFAULT_SEED, construct_composite, cusp_data


@pytest.fixture(scope="session")
def torus_sextic():
    """g1^2 + g2^3 with seeded generic cubic g1 and conic g2."""
    F, report = construct_composite(cusp_data(), 1, seed=DEFAULT_SEED)
    return F, report


@pytest.fixture(scope="session")
def segre_m2():
    F, report = construct_composite(cusp_data(), 2, seed=DEFAULT_SEED)
    return F, report
