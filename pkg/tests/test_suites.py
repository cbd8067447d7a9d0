from fractions import Fraction

import pytest

from quiver_hecke.cartan import preset
from quiver_hecke.errors import TruncationExhausted
from quiver_hecke.suites import (
    ALIASES,
    SUITES,
    Case,
    SuiteContext,
    build_cases,
    run_case,
    run_suite,
    summary_rows,
)


@pytest.fixture
def ctx(config):
    return SuiteContext(preset("A2"), config, i="1", ht=2)


def test_indices(config):
    assert SuiteContext(preset("A2"), config).indices == ["1", "2"]
    assert SuiteContext(preset("A2"), config, i="2").indices == ["2"]


def test_unknown_suite(ctx):
    with pytest.raises(ValueError, match="unknown suite"):
        build_cases("everything", ctx)


def test_bos_cases(ctx):
    keys = [c.key for c in build_cases("bos", ctx)]
    assert keys == ["1:relations", "1:generators", "1:psi-isometry"]


@pytest.mark.parametrize("suite", ["relations", "appendixB", "dims", "bos", "gen2", "thJ"])
def test_suites_expand(ctx, suite):
    cases = build_cases(suite, ctx)
    assert cases
    assert all(c.suite == suite for c in cases)


def test_canonical_suite_names():
    for name in ("relations", "appendixB", "rmatrix", "lasw", "desw", "thJ", "diei", "bos",
                 "gen2"):
        assert name in SUITES


@pytest.mark.parametrize("alias, name", sorted(ALIASES.items()))
def test_aliases_resolve(ctx, alias, name):
    assert [c.key for c in build_cases(alias, ctx)] == [c.key for c in build_cases(name, ctx)]
    assert all(c.suite == name for c in build_cases(alias, ctx))


def test_thJ_skips_words_without_simple_head(config):
    ctx = SuiteContext(preset("A2"), config, i="1", ht=3)
    keys = {c.key for c in build_cases("thJ", ctx)}
    assert "1:<1|2|1>" in keys
    assert "1:hd<121>" not in keys
    assert "1:hd<112>" in keys


def test_rmatrix_rank_one(config):
    ctx = SuiteContext(preset("A1"), config, ht=2)
    cases = build_cases("rmatrix", ctx)
    keys = [c.key for c in cases]
    assert "delta:1,1+" in keys and "delta:1,1" in keys
    results = {c.key: run_case(c) for c in cases}
    assert results["delta:1,1+"].computed == "1"
    assert all(r.passed for r in results.values())


def test_all_covers_every_suite(ctx):
    suites = {c.suite for c in build_cases("all", ctx)}
    assert suites == set(SUITES)


def test_run_case_maps_library_errors():
    def boom():
        raise TruncationExhausted("order 4 at depth 4")

    result = run_case(Case("desw", "i=1", boom))
    assert result.status == "error"
    assert result.error_type == "TruncationExhausted"


def test_run_case_maps_unexpected_errors():
    def boom():
        raise ValueError("bad shape")

    result = run_case(Case("dims", "x", boom))
    assert result.status == "error"
    assert result.error_type == "ValueError"
    assert result.error == "bad shape"


def test_run_case_stringifies_detail():
    result = run_case(Case("dims", "x", lambda: {
        "expected": 1, "computed": Fraction(1), "pass": True, "extra": {2: Fraction(1, 3)}}))
    assert result.passed
    assert result.expected == "1" and result.computed == "1"
    assert result.detail == {"extra": {"2": "1/3"}}


def test_run_case_failure():
    result = run_case(Case("dims", "x", lambda: {"expected": 1, "computed": 2, "pass": False}))
    assert result.status == "fail"


def test_run_suite(ctx):
    report = run_suite("bos", ctx, "A2")
    assert report.passed
    assert report.counts()["pass"] == 3
    assert report.config["i"] == "1"
    rows = summary_rows(report)
    assert [r[3] for r in rows] == ["pass"] * 3
