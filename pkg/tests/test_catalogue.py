import math

import pytest

from quiver_hecke.catalogue import (
    L_i_z,
    affinize,
    build_Cpm,
    cyc_ic_a,
    det_icj,
    determinantial,
    head_module,
    kato_module,
    module_from_spec,
    simple_power,
)
from quiver_hecke.errors import HypothesisFailed, ParseError, UnknownGenerator
from quiver_hecke.gmod import check_relations, dual_star
from quiver_hecke.semisimple import head_report, is_simple


@pytest.mark.parametrize("word", [("1",), ("1", "2"), ("1", "2", "1"), ("2", "1", "2", "1")])
def test_kato_dimension(A2, word):
    M = kato_module(A2, word)
    assert M.dim == math.factorial(len(word))
    assert check_relations(M) == []


def test_kato_of_empty_word_is_unit(A2):
    assert kato_module(A2, ()).height == 0


@pytest.mark.parametrize("n", [1, 2, 3])
def test_simple_power_dimension(A1, n):
    M = simple_power(A1, "1", n)
    assert M.dim == math.factorial(n)
    assert M.character() == dual_star(M).character()


def test_simple_power_rejects_zero(A1):
    with pytest.raises(ValueError):
        simple_power(A1, "1", 0)


@pytest.mark.parametrize("word", [("1", "1", "2"), ("2", "1", "1"), ("1", "2")])
def test_head_module_is_self_dual(A2, word):
    H = head_module(A2, word)
    assert is_simple(H)
    assert H.character() == dual_star(H).character()


def test_head_module_rejects_semisimple_head(A2):
    report = head_report(kato_module(A2, ("1", "2", "1")))
    assert not report.simple
    with pytest.raises(HypothesisFailed, match="not simple"):
        head_module(A2, ("1", "2", "1"))


def test_determinantial_A2(A2):
    M = determinantial(A2, "1", "2")
    assert M.dim == 1
    assert M.words == [("1", "2")]


def test_determinantial_B2(B2):
    M = determinantial(B2, "2", "1")
    assert ("2", "2", "1") in M.support()
    assert check_relations(M) == []
    assert is_simple(M)
    assert M.character() == dual_star(M).character()


def test_determinantial_needs_two_indices(A2):
    with pytest.raises(ValueError):
        determinantial(A2, "1", "1")


def test_braider_modules(A2_plus, A2_minus):
    Cp = build_Cpm(A2_plus, "1", "+")
    assert Cp.dim == 1 and Cp.degrees == [0]
    assert Cp.words == [("1", "1+")]
    Cm = build_Cpm(A2_minus, "1", "-")
    assert Cm.words == [("1-", "1")]
    with pytest.raises(ValueError):
        build_Cpm(A2_plus, "1", "-")


def test_L_i_z(A1):
    A = L_i_z(A1, "1", trunc=4)
    assert A.module.dim == 4
    assert A.z_degree == 2
    assert A.rank() == 1
    assert A.check() == []
    assert A.renamed("w").var == "w"


def test_L_i_z_rejects_short_truncation(A1):
    with pytest.raises(ValueError):
        L_i_z(A1, "1", trunc=1)


def test_det_icj_is_free(A2):
    A = det_icj(A2, "1", "2", trunc=3)
    assert A.check() == []
    assert A.rank() == determinantial(A2, "1", "2").dim


def test_cyc_ic_a(A1):
    M = cyc_ic_a(A1, "1", 2)
    assert check_relations(M) == []
    assert M.support() == [("1", "1")]


def test_affinize_dispatch(A1):
    assert affinize(A1, "L_i_z", {"i": "1"}, trunc=3).module.dim == 3
    with pytest.raises(UnknownGenerator):
        affinize(A1, "nope", {})


@pytest.mark.parametrize(
    "spec, dim",
    [("1", 1), ("<1>", 1), ("<1|2|1>", 6), ("hd<12>", 1), ("hd<1,2>", 1), ("1^3", 6),
     ("det<1,2>", 1)],
)
def test_module_from_spec(A2, spec, dim):
    assert module_from_spec(A2, spec).dim == dim


def test_module_from_spec_braiders(A2_plus):
    assert module_from_spec(A2_plus, "C+").words == [("1", "1+")]
    assert module_from_spec(A2_plus, "<1|1+>").dim == 2
    with pytest.raises(ParseError):
        module_from_spec(A2_plus, "C-")


@pytest.mark.parametrize("spec", ["<1|7>", "C+", "<1", "1^x"])
def test_module_from_spec_errors(A2, spec):
    with pytest.raises(ParseError):
        module_from_spec(A2, spec)
