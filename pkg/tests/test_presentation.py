import pytest

from quiver_hecke.catalogue import kato_module
from quiver_hecke.errors import CeilingTooSmall
from quiver_hecke.gmod import check_relations
from quiver_hecke.homs import is_isomorphic
from quiver_hecke.presentation import (
    cyclic,
    finite_from_presentation,
    module_from_presentation,
    pbw_keys,
)
from quiver_hecke.qha import multiply


def _x_e(alg, k, word):
    e = alg.e(word)
    return multiply(alg.x(k, e.weight), e)


def test_pbw_keys_degrees(A1):
    degrees = sorted(d for _, d in pbw_keys(A1, ("1", "1"), 0))
    assert degrees == [-2, 0, 0, 0]


def test_free_window_of_one_letter(A1):
    P = cyclic(A1, ("1",), [], "P1")
    window = module_from_presentation(P, 6)
    assert window.degrees == [0, 2, 4, 6]
    assert window.reliable_upto == 0
    assert window.generator_vectors == [{0: A1.domain.one}]


def test_ceiling_too_small(A1):
    P = cyclic(A1, ("1",), [], "P1")
    with pytest.raises(CeilingTooSmall):
        module_from_presentation(P, 2)


def test_standard_module_from_relations(A2):
    word = ("1", "2")
    P = cyclic(A2, word, [_x_e(A2, 0, word), _x_e(A2, 1, word)], "std")
    M = finite_from_presentation(P)
    assert M.dim == 2
    assert check_relations(M) == []
    assert is_isomorphic(M, kato_module(A2, word))


def test_inhomogeneous_relation_rejected(A1):
    word = ("1",)
    P = cyclic(A1, word, [_x_e(A1, 0, word) + A1.e(word)], "bad")
    with pytest.raises(ValueError):
        module_from_presentation(P, 6)


def test_window_closes_for_one_letter(A1):
    P = cyclic(A1, ("1",), [_x_e(A1, 0, ("1",))], "L")
    M = finite_from_presentation(P)
    assert M.dim == 1
    assert M.degrees == [0]
