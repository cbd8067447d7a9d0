import pytest

from quiver_hecke.catalogue import build_Cpm
from quiver_hecke.errors import HypothesisFailed, WeightMismatch
from quiver_hecke.gmod import one_letter
from quiver_hecke.locext import (
    LEFT,
    RIGHT,
    H,
    H_from_lambda,
    LocalObject,
    braider_hexagon,
    dual_witness,
    level_schedule,
    loc_hom,
    loc_tensor,
    nondeg_braider,
    self_braiding,
)
from quiver_hecke.rmat import Lambda


@pytest.fixture(scope="module")
def C_plus(A2_plus):
    return build_Cpm(A2_plus, "1", "+")


@pytest.fixture(scope="module")
def braider(C_plus):
    return nondeg_braider(C_plus, LEFT)


def test_braider_is_nondegenerate(A2_plus, braider):
    assert set(braider.letters) == set(A2_plus.datum.index_set)
    assert braider.is_nondegenerate()
    assert all(v == 0 for v in braider.phi.values())
    assert braider.to_dict()["side"] == LEFT


def test_right_braider(A2_minus):
    B = nondeg_braider(build_Cpm(A2_minus, "1", "-"), RIGHT)
    assert B.is_nondegenerate()


def test_braider_rejects_unknown_side(C_plus):
    with pytest.raises(ValueError):
        nondeg_braider(C_plus, "up")


@pytest.mark.parametrize("j", ["1", "2", "1+"])
def test_C_plus_commutes_with_letters(A2_plus, C_plus, j):
    assert Lambda(C_plus, one_letter(A2_plus, j)) == 0


def test_self_braiding(C_plus):
    assert self_braiding(C_plus)["pass"]


def test_hexagon(A2_plus, braider):
    row = braider_hexagon(braider, one_letter(A2_plus, "1"), one_letter(A2_plus, "2"))
    assert row["pass"]


@pytest.mark.parametrize("m, n", [(1, 1), (1, 2), (2, 1)])
def test_H_agrees_with_lambda_tilde(C_plus, m, n):
    assert H(C_plus, m, n) == H_from_lambda(C_plus, m, n)


def test_H_vanishes_at_zero(C_plus):
    assert H(C_plus, 0, 3) == 0
    assert H_from_lambda(C_plus, 2, 0) == 0


def test_loc_tensor_adds_powers(A2_plus, braider):
    X = LocalObject(one_letter(A2_plus, "2"), 1)
    Y = LocalObject(one_letter(A2_plus, "1"), 2)
    Z = loc_tensor(braider, X, Y)
    assert Z.m == 3
    assert Z.weight(braider.C) == X.weight(braider.C) + Y.weight(braider.C)


def test_loc_hom_contains_braiding(A2_plus, braider):
    X = LocalObject(one_letter(A2_plus, "2"), 0)
    assert loc_hom(braider, X, X, 1).dim == 1


def test_loc_hom_weight_mismatch(A2_plus, braider):
    X = LocalObject(one_letter(A2_plus, "2"), 0)
    Y = LocalObject(one_letter(A2_plus, "1"), 0)
    with pytest.raises(WeightMismatch):
        loc_hom(braider, X, Y, 1)


def test_dual_witness(C_plus):
    w = dual_witness(C_plus, "1", 1)
    assert w.surjective
    assert w.K.words == [("1+",)]
    assert w.to_dict()["rank"] == C_plus.dim


def test_dual_witness_needs_eps_one(C_plus):
    with pytest.raises(HypothesisFailed):
        dual_witness(C_plus, "2", 1)


def test_level_schedule_doubles():
    assert level_schedule() == [2, 4, 8]
    assert level_schedule(1, 4) == [1, 2, 4]
    assert level_schedule(2, 7) == [2, 4]
    assert level_schedule(3, 3) == [3]
    with pytest.raises(ValueError):
        level_schedule(0, 4)
