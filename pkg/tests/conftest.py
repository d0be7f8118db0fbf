import pytest

from gridcurve import catalog


@pytest.fixture(scope="session")
def all_grids():
    return {name: catalog.grid(name) for name in catalog.grid_names()}


@pytest.fixture(scope="session")
def all_curvesets():
    return {name: catalog.curveset(name) for name in catalog.curveset_names()}


@pytest.fixture(scope="session")
def regression_sets():
    return catalog.regression_sets()
