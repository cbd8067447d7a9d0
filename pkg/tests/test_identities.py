import pytest

from quiver_hecke.identities import (
    all_words,
    verify_associativity,
    verify_commutation_identities,
    verify_relations,
)


def test_all_words(A2):
    words = list(all_words(A2, 2))
    assert len(words) == 2 + 4
    assert words[0] == ("1",)


@pytest.mark.parametrize("name", ["A1", "A2", "B2"])
def test_relations(request, name):
    report = verify_relations(request.getfixturevalue(name), max_height=3)
    failed = [r["identity"] for r in report["identities"] if not r["pass"]]
    assert failed == []
    assert all(r["checked"] > 0 for r in report["identities"]
               if r["identity"] not in ("tau far commute",))


def test_relations_far_commute_at_height_four(A1):
    report = verify_relations(A1, max_height=4)
    by_name = {r["identity"]: r for r in report["identities"]}
    assert by_name["tau far commute"]["checked"] > 0
    assert report["pass"]


@pytest.mark.parametrize("name", ["A2", "B2"])
def test_commutation_identities(request, name):
    report = verify_commutation_identities(request.getfixturevalue(name), max_height=3)
    failed = [r["identity"] for r in report["identities"] if not r["pass"]]
    assert failed == []


def test_associativity(B2):
    report = verify_associativity(B2, max_height=3, samples=20, seed=7)
    assert report["pass"]
    assert report["samples"] == 20
