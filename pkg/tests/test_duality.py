import pytest

from quiver_hecke.cartan import preset
from quiver_hecke.duality import verify_DeSW, verify_LaSW


@pytest.fixture(scope="module")
def lasw_A2():
    return verify_LaSW(preset("A2"), "1")


def test_lambda_table_A2(lasw_A2):
    assert set(lasw_A2["tables"]) == {"K+", "K-"}
    pairs = {r["pair"] for r in lasw_A2["tables"]["K+"]["rows"]}
    assert {"1-,2", "2,1-", "1,2", "2,1", "1,1-", "1-,1"} <= pairs
    assert lasw_A2["rows"] == lasw_A2["tables"]["K+"]["rows"]
    assert lasw_A2["pass"]


def test_mirror_lambda_table_A2(lasw_A2):
    minus = lasw_A2["tables"]["K-"]
    pairs = {r["pair"] for r in minus["rows"]}
    assert {"2,1+", "1+,2", "1,2", "2,1", "1+,1", "1,1+"} <= pairs
    assert all("1-" not in r["pair"] for r in minus["rows"])
    assert minus["pass"]


def test_mirror_table_uses_reversed_cusps(lasw_A2):
    row = next(r for r in lasw_A2["tables"]["K-"]["rows"] if r["pair"] == "2,1+")
    assert row["terms"] == {"Lambda(1-,<21^1>)": row["computed"]}
    assert row["chain_agrees"]


@pytest.fixture(scope="module")
def lasw_B2():
    return verify_LaSW(preset("B2"), "1")


@pytest.mark.parametrize("scope", ["K+", "K-"])
def test_lambda_table_B2(lasw_B2, scope):
    failed = [r["pair"] for r in lasw_B2["tables"][scope]["rows"] if not r["pass"]]
    assert failed == []


def test_delta_table_A2(lasw_A2):
    report = verify_DeSW(preset("A2"), "1", trunc=4, lasw=lasw_A2)
    failed = [r["pair"] for r in report["rows"] if not r["pass"]]
    assert failed == []
    assert report["trunc"] == 4
