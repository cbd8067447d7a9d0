import pytest
from sympy import Poly

from quiver_hecke.cartan import associator_from_skew, preset
from quiver_hecke.catalogue import L_i_z, determinantial, simple_power
from quiver_hecke.errors import NotLambdaDefinable
from quiver_hecke.gmod import one_letter
from quiver_hecke.qha import KLRAlgebra
from quiver_hecke.rmat import (
    W,
    Z,
    Delta,
    Lambda,
    associator_defect,
    delta,
    lambda_tilde,
    rmatrix,
    self_dual_product,
    yang_baxter,
)
from quiver_hecke.semisimple import is_simple


def test_lambda_of_neighbouring_letters(A2):
    L1, L2 = one_letter(A2, "1"), one_letter(A2, "2")
    r = rmatrix(L1, L2)
    assert r.Lambda == 1
    assert r.method == "unmixed"
    assert r.morphism.is_homomorphism()
    assert Lambda(L2, L1) == 1
    assert delta(L1, L2) == 1


def test_unmixed_lambda_matches_grading(A2):
    L1, L2 = one_letter(A2, "1"), one_letter(A2, "2")
    assert Lambda(L1, L2) == A2.lam(L1.weight, L2.weight)
    assert lambda_tilde(L1, L2) == 0


def test_commuting_letters_have_zero_lambda():
    A3 = KLRAlgebra(preset("A3"))
    L1, L3 = one_letter(A3, "1"), one_letter(A3, "3")
    assert Lambda(L1, L3) == 0
    assert delta(L1, L3) == 0


def test_hom_method_without_unmixed_shortcut(B2):
    M = simple_power(B2, "1", 2)
    r = rmatrix(M, one_letter(B2, "1"))
    assert r.method == "hom"
    assert r.morphism.degree == r.Lambda


def test_not_lambda_definable():
    A3 = KLRAlgebra(preset("A3"))
    # k[x_1]/x_1^2 on the letter 1 has a two-dimensional endomorphism ring
    M = L_i_z(A3, "1", trunc=2).module.transform(lambda m: m, name="J")
    M.central = {}
    with pytest.raises(NotLambdaDefinable) as err:
        rmatrix(M, one_letter(A3, "3"))
    assert err.value.dimension == 2


def test_self_dual_product_of_commuting_letters():
    A3 = KLRAlgebra(preset("A3"))
    P = self_dual_product(one_letter(A3, "1"), one_letter(A3, "3"))
    assert is_simple(P)
    assert sorted(P.degrees) == [0, 0]


def test_yang_baxter(A2):
    L1, L2 = one_letter(A2, "1"), one_letter(A2, "2")
    assert yang_baxter(L1, L2, L1)
    assert yang_baxter(L2, L1, L1)


def test_associator_defect(A2):
    lam_to = associator_from_skew(A2.datum, {("1", "2"): 1})
    row = associator_defect(one_letter(A2, "1"), one_letter(A2, "2"), lam_to)
    assert row["pass"]
    assert row["expected_difference"] == 1
    assert row["after"] - row["before"] == 1


def test_associator_defect_on_cuspidal(A2):
    lam_to = associator_from_skew(A2.datum, {("1", "2"): 2})
    row = associator_defect(determinantial(A2, "1", "2"), one_letter(A2, "1"), lam_to)
    assert row["pass"]


def test_delta_of_neighbouring_affinizations(A2):
    result = Delta(L_i_z(A2, "1", trunc=3, var="z"), L_i_z(A2, "2", trunc=3, var="w"))
    assert result.poly == Poly(Z + W, Z, W)
