import logging

import pytest

from quiver_hecke.cartan import preset
from quiver_hecke.catalogue import kato_module, simple_power
from quiver_hecke.errors import HypothesisFailed
from quiver_hecke.gmod import check_relations, one_letter
from quiver_hecke.polys import field_domain
from quiver_hecke.qha import KLRAlgebra
from quiver_hecke.semisimple import (
    composition_factors,
    head_report,
    image_algebra,
    is_semisimple,
    is_simple,
    radical,
    semisimple_head,
    simple_head,
    simple_modules,
    socle,
)


def test_one_letter_is_simple(A2):
    assert is_simple(one_letter(A2, "1"))


def test_standard_module_has_radical(A2):
    M = kato_module(A2, ("1", "2"))
    assert not is_semisimple(M)
    assert len(radical(image_algebra(M))) == 1


def test_head_and_socle_of_standard_module(A2):
    M = kato_module(A2, ("1", "2"))
    head = semisimple_head(M)
    assert head.dim == 1
    assert head.words == [("1", "2")]
    assert check_relations(head) == []
    soc = socle(M)
    assert soc.dim == 1
    assert soc.words == [("2", "1")]


def test_simple_head(A2):
    head = simple_head(kato_module(A2, ("2", "1")))
    assert head.dim == 1
    assert head.words == [("2", "1")]
    assert is_simple(head)


def test_commuting_letters_are_simple():
    A3 = KLRAlgebra(preset("A3"))
    M = kato_module(A3, ("1", "3"))
    assert M.dim == 2
    assert is_simple(M)


@pytest.mark.parametrize("n", [2, 3])
def test_simple_power_is_simple(B2, n):
    assert is_simple(simple_power(B2, "2", n))


def test_image_algebra_of_simple_power(A1):
    # all of End(M) for a simple module of dimension 2
    assert image_algebra(simple_power(A1, "1", 2)).dim == 4


def test_positive_characteristic_rejected():
    alg = KLRAlgebra(preset("A1"), domain=field_domain("Fp:5"))
    with pytest.raises(HypothesisFailed):
        semisimple_head(one_letter(alg, "1"))


def test_radical_of_three_letter_standard_module(A2):
    M = kato_module(A2, ("1", "2", "2"))
    assert radical(image_algebra(M))
    assert semisimple_head(M).dim < M.dim


def test_simple_modules_of_weight(A2):
    simples = simple_modules(A2, A2.datum.weight_of_word(("1", "2")))
    assert sorted(S.words[0] for S in simples) == [("1", "2"), ("2", "1")]
    assert all(min(S.degrees) == 0 for S in simples)


def test_composition_factors_of_standard_module(A2):
    M = kato_module(A2, ("1", "2"))
    simples = simple_modules(A2, M.weight)
    factors = composition_factors(M.character(), simples)
    assert len(factors) == 2
    assert all(m.at_one() == 1 for m in factors.values())


def test_head_report_of_simple_head(A2):
    report = head_report(kato_module(A2, ("1", "2")))
    assert report.simple
    assert len(report.factors) == 1
    assert report.to_dict()["simple"]


def test_head_report_of_semisimple_head(A2):
    report = head_report(kato_module(A2, ("1", "2", "1")))
    assert report.head.dim == 6
    assert not report.simple
    assert sorted(S.dim for S, _ in report.factors) == [3, 3]
    assert all(m.at_one() == 1 for _, m in report.factors)


def test_simple_head_warns_with_factors(A2, caplog):
    with caplog.at_level(logging.WARNING, logger="quiver_hecke.semisimple"):
        head = simple_head(kato_module(A2, ("1", "2", "1")))
    assert head.dim == 6
    assert "not simple" in caplog.text
    assert "L0" in caplog.text and "L1" in caplog.text
