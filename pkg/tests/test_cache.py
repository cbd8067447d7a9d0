from fractions import Fraction

from quiver_hecke.cache import load_json, load_module, save_json, save_module, with_cache
from quiver_hecke.catalogue import kato_module
from quiver_hecke.linalg import rows_of


def test_load_missing(tmp_path):
    assert load_json(tmp_path / "nope.json") is None


def test_save_json_stringifies_exact_values(tmp_path):
    path = tmp_path / "sub" / "data.json"
    save_json(path, {"b": Fraction(1, 2), "a": 1})
    assert load_json(path) == {"a": 1, "b": "1/2"}


def test_with_cache(tmp_path):
    path = tmp_path / "cache.json"
    calls = []

    def compute():
        calls.append(1)
        return {"value": len(calls)}

    assert with_cache(path, compute) == {"value": 1}
    assert with_cache(path, compute) == {"value": 1}
    assert with_cache(path, compute, force=True) == {"value": 2}
    assert len(calls) == 2


def test_module_dump(tmp_path, A2):
    M = kato_module(A2, ("1", "2", "1"))
    path = tmp_path / "modules" / "m.json"
    save_module(path, M)
    N = load_module(path, A2)
    assert N.words == M.words
    assert N.degrees == M.degrees
    assert [rows_of(t) for t in N.tau] == [rows_of(t) for t in M.tau]
