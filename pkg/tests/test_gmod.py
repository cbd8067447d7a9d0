import pytest

from quiver_hecke.cache import load_module, save_module
from quiver_hecke.cartan import associator_from_skew
from quiver_hecke.catalogue import kato_module, simple_power
from quiver_hecke.characters import Laurent
from quiver_hecke.errors import AlgebraMismatch
from quiver_hecke.gmod import (
    E_i,
    E_i_star,
    check_relations,
    dual_star,
    eps_i,
    eps_i_star,
    is_unmixed,
    one_letter,
    quotient,
    regrade,
    restrict,
    shift,
    unit_module,
)
from quiver_hecke.linalg import rows_of


def test_one_letter(A2):
    L = one_letter(A2, "1")
    assert L.dim == 1 and L.height == 1
    assert L.words == [("1",)]
    assert check_relations(L) == []


def test_unit_module(A2):
    k = unit_module(A2)
    assert k.dim == 1 and k.height == 0


def test_kato_module_character(A2):
    M = kato_module(A2, ("1", "2"))
    assert M.dim == 2
    ch = M.character()
    assert ch.table[("1", "2")] == Laurent.monomial(0)
    assert ch.table[("2", "1")] == Laurent.monomial(1)
    assert check_relations(M) == []


def test_simple_power_relations(B2):
    M = simple_power(B2, "2", 3)
    assert M.dim == 6
    assert check_relations(M) == []
    assert M.character() == dual_star(M).character()


def test_shift(A2):
    M = shift(one_letter(A2, "2"), 3)
    assert M.degrees == [3]
    assert shift(M, 0) is M


def test_E_i(A2):
    M = kato_module(A2, ("1", "2"))
    E = E_i(M, "1")
    assert E.dim == 1
    assert E.weight == A2.datum.root("2")
    assert E_i_star(M, "1").dim == 1
    assert E_i(M, "2").words == [("1",)]
    assert eps_i(M, "1") == 1
    assert eps_i_star(M, "2") == 1


def test_eps_of_power(A1):
    M = simple_power(A1, "1", 3)
    assert eps_i(M, "1") == 3
    assert E_i(M, "1").dim == 6


def test_restrict(A2):
    M = kato_module(A2, ("1", "2"))
    R = restrict(M, A2.datum.root("2"), A2.datum.root("1"))
    assert R.words == [("2", "1")]
    assert R.tau[0] is None
    with pytest.raises(AlgebraMismatch):
        restrict(M, A2.datum.root("2"), A2.datum.root("2"))


def test_unmixed(A2):
    one, two = one_letter(A2, "1"), one_letter(A2, "2")
    assert is_unmixed(one, two)
    M = kato_module(A2, ("1", "2"))
    assert not is_unmixed(M, M)


def test_quotient_by_a_submodule(A2):
    M = kato_module(A2, ("1", "2"))
    # the (2,1) slice of <1> o <2> is a submodule; the quotient is the head <12>
    top = M.slice_indices(("2", "1"))
    Q = quotient(M, [{b: A2.domain.one} for b in top], "hd")
    assert Q.dim == 1
    assert Q.words == [("1", "2")]
    assert check_relations(Q) == []


def test_regrade_moves_degrees(A2):
    lam = associator_from_skew(A2.datum, {("1", "2"): 2})
    M = kato_module(A2, ("1", "2"))
    K = regrade(M, lam)
    assert K.algebra.lam is lam
    assert K.dim == M.dim
    # the e(1,2) slice moves by c(1,2)/2 = 1, the e(2,1) slice by c(2,1)/2 = -1
    by_word = dict(zip(K.words, K.degrees))
    assert by_word[("1", "2")] == 1
    assert by_word[("2", "1")] == 0
    assert check_relations(K) == []


def test_module_dump_round_trip(tmp_path, B2):
    M = simple_power(B2, "1", 2)
    path = tmp_path / "modules" / "power.json"
    save_module(path, M)
    again = load_module(path, B2)
    assert again.character() == M.character()
    assert [rows_of(m) for m in again.x] == [rows_of(m) for m in M.x]
    assert [rows_of(m) for m in again.tau] == [rows_of(m) for m in M.tau]
