import random
from math import comb

import pytest

from quiver_hecke.catalogue import head_module, kato_module
from quiver_hecke.characters import shuffle_product
from quiver_hecke.convolution import convolution, convolution_power, convolution_product
from quiver_hecke.errors import AlgebraMismatch
from quiver_hecke.gmod import check_relations, one_letter


@pytest.mark.parametrize("w1,w2", [(("1",), ("2",)), (("1", "2"), ("1",)),
                                   (("2",), ("1", "1")), (("1", "2"), ("2", "1"))])
def test_dimension_and_character(A2, w1, w2):
    M, N = kato_module(A2, w1), kato_module(A2, w2)
    P = convolution(M, N)
    assert P.dim == comb(M.height + N.height, M.height) * M.dim * N.dim
    assert P.character() == shuffle_product(M.character(), N.character(), A2.tau_degree)
    assert check_relations(P) == []


def test_seeded_pairs(B2):
    rng = random.Random(0)
    for _ in range(5):
        w1 = tuple(rng.choice("12") for _ in range(rng.randint(1, 2)))
        w2 = tuple(rng.choice("12") for _ in range(rng.randint(1, 2)))
        M, N = head_module(B2, w1), kato_module(B2, w2)
        assert convolution(M, N).dim == comb(len(w1) + len(w2), len(w1)) * M.dim * N.dim


def test_power_of_a_letter(A1):
    P = convolution_power(one_letter(A1, "1"), 3)
    assert P.dim == 6
    assert check_relations(P) == []


def test_associativity_of_products(A2):
    L1, L2 = one_letter(A2, "1"), one_letter(A2, "2")
    left = convolution_product([L1, L2, L1])
    right = convolution(L1, convolution(L2, L1))
    assert left.character() == right.character()


def test_algebra_mismatch(A2, B2):
    with pytest.raises(AlgebraMismatch):
        convolution(one_letter(A2, "1"), one_letter(B2, "1"))
