"""Shared algebras for the test suite."""

import pytest

from quiver_hecke.cartan import preset
from quiver_hecke.catalogue import extended_algebra
from quiver_hecke.config import Config
from quiver_hecke.qha import KLRAlgebra

ENV_VARS = (
    "KLR_FIELD", "KLR_TRUNC", "KLR_CEILING", "KLR_LEVEL_START", "KLR_LEVEL_CAP",
    "KLR_WORKERS", "KLR_SEED", "KLR_FUEL", "KLR_DATA_DIR", "KLR_LOG_LEVEL",
)


@pytest.fixture(scope="session")
def A1():
    return KLRAlgebra(preset("A1"))


@pytest.fixture(scope="session")
def A2():
    return KLRAlgebra(preset("A2"))


@pytest.fixture(scope="session")
def B2():
    return KLRAlgebra(preset("B2"))


@pytest.fixture(scope="session")
def A2_plus():
    """A2 extended at 1 with the lambda+ grading."""
    return extended_algebra(preset("A2"), "1", "+")


@pytest.fixture(scope="session")
def A2_minus():
    return extended_algebra(preset("A2"), "1", "-")


@pytest.fixture
def config(tmp_path, monkeypatch):
    for name in ENV_VARS:
        monkeypatch.delenv(name, raising=False)
    return Config(data_dir=str(tmp_path), workers=1)


@pytest.fixture
def clean_env(monkeypatch):
    for name in ENV_VARS:
        monkeypatch.delenv(name, raising=False)
    return monkeypatch
