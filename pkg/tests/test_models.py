import pytest

from quiver_hecke.models import SCHEMA, CaseResult, Report


def _report():
    report = Report(suite="cpm", cartan="A2", config={"trunc": 4})
    report.add(CaseResult(key="1+:dim", suite="cpm", status="pass", expected="1", computed="1"))
    report.add(CaseResult(key="1+:braider", suite="cpm", status="fail", detail={"phi": "0"}))
    report.add(CaseResult(key="1-:dim", suite="cpm", status="error", error="boom",
                          error_type="TruncationExhausted"))
    return report


def test_cases_are_ordered_by_key():
    keys = [c.key for c in _report().cases]
    assert keys == sorted(keys)


def test_counts_and_pass():
    report = _report()
    assert report.counts() == {"pass": 1, "fail": 1, "error": 1}
    assert not report.passed
    assert [c.key for c in report.errors_of("TruncationExhausted")] == ["1-:dim"]


def test_empty_report_passes():
    assert Report(suite="bos", cartan="A1").passed


def test_dict_round_trip():
    report = _report()
    data = report.to_dict()
    assert data["schema"] == SCHEMA
    assert data["pass"] is False
    again = Report.from_dict(data)
    assert again.to_dict() == data


def test_unknown_schema():
    data = _report().to_dict()
    data["schema"] = "klr-report/0"
    with pytest.raises(ValueError):
        Report.from_dict(data)


def test_rows():
    rows = _report().rows()
    assert rows[0]["case"] == "1+:braider"
    assert set(rows[0]) == {"suite", "case", "status", "expected", "computed", "seconds",
                            "error"}
