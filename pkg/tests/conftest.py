import random

import pytest

from propsizer import load_catalogs
from propsizer.catalog import bundled_catalog_dir
from propsizer.statmodels import fit_stat_models

SEED = 20240811


@pytest.fixture(scope="session")
def catalogs():
    return load_catalogs(bundled_catalog_dir())


@pytest.fixture(scope="session")
def stat(catalogs):
    return fit_stat_models(catalogs)


@pytest.fixture()
def rng():
    return random.Random(SEED)
