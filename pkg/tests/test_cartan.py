import pytest
from hypothesis import given
from hypothesis import strategies as st

from quiver_hecke.cartan import (
    PRESETS,
    CartanDatum,
    associator_by_name,
    associator_from_skew,
    build_cartan,
    canonical_associator,
    extend_cartan,
    lambda_pm,
    preset,
)
from quiver_hecke.errors import AssociatorInconsistent, NotGCM, NotSymmetrizable

coeffs = st.tuples(st.integers(-3, 3), st.integers(-3, 3))


@pytest.mark.parametrize("name", sorted(PRESETS))
def test_presets_are_symmetrizable(name):
    datum = preset(name)
    for j in datum.index_set:
        assert datum.c(j, j) == 2
        for k in datum.index_set:
            assert datum.form(j, k) == datum.form(k, j)


def test_b2_form():
    datum = preset("B2")
    assert datum.form("1", "1") == 4
    assert datum.form("2", "2") == 2
    assert datum.form("1", "2") == -2


def test_unknown_preset():
    with pytest.raises(ValueError):
        preset("G7")


def test_not_gcm():
    with pytest.raises(NotGCM):
        build_cartan([[2, 1], [-1, 2]], [1, 1])
    with pytest.raises(NotGCM):
        build_cartan([[3]], [1])
    with pytest.raises(NotGCM):
        build_cartan([[2, 0], [-1, 2]], [1, 1])


def test_not_symmetrizable():
    with pytest.raises(NotSymmetrizable):
        build_cartan([[2, -1], [-2, 2]], [1, 1])


@given(coeffs, coeffs)
def test_pair_is_symmetric(b, g):
    datum = preset("B2")
    beta = datum.root_from_labels({"1": b[0], "2": b[1]})
    gamma = datum.root_from_labels({"1": g[0], "2": g[1]})
    assert datum.pair(beta, gamma) == datum.pair(gamma, beta)


@pytest.mark.parametrize("name", ["A2", "B2", "C2"])
@pytest.mark.parametrize("sign", ["+", "-"])
def test_extension(name, sign):
    datum = preset(name)
    ext = extend_cartan(datum, "1", sign)
    new = f"1{sign}"
    assert ext.index_set == datum.index_set + (new,)
    assert ext.d(new) == datum.d("1")
    assert ext.form("1", new) == -datum.form("1", "1") // 2
    assert ext.form("2", new) == 0
    assert ext.base_labels() == datum.index_set
    assert ext.plus_label() == new


@pytest.mark.parametrize("name", ["A2", "B2"])
@pytest.mark.parametrize("i", ["1", "2"])
@pytest.mark.parametrize("sign", ["+", "-"])
def test_lambda_pm_is_an_associator(name, i, sign):
    ext = extend_cartan(preset(name), i, sign)
    lam = lambda_pm(ext, i, sign)
    lam.validate()
    new = f"{i}{sign}"
    if sign == "+":
        assert lam.value(i, new) == 0
    else:
        assert lam.value(new, i) == 0


@given(coeffs, coeffs)
def test_canonical_skew_vanishes(b, g):
    datum = preset("A2")
    lam = canonical_associator(datum)
    beta = datum.root_from_labels({"1": b[0], "2": b[1]})
    gamma = datum.root_from_labels({"1": g[0], "2": g[1]})
    assert lam.skew(beta, gamma) == 0
    assert lam(beta, gamma) + lam(gamma, beta) == -2 * datum.pair(beta, gamma)


def test_skewed_associator():
    datum = preset("A2")
    lam = associator_from_skew(datum, {("1", "2"): 3})
    assert lam.value("1", "2") == 1 + 3
    assert lam.value("2", "1") == 1 - 3
    with pytest.raises(AssociatorInconsistent):
        associator_from_skew(datum, {("1", "1"): 1})


def test_associator_by_name():
    datum = preset("A2")
    assert associator_by_name(datum, "canonical").name == "canonical"
    with pytest.raises(ValueError):
        associator_by_name(datum, "lambda+")
    ext = extend_cartan(datum, "2", "-")
    assert associator_by_name(ext, "lambda-").name == "lambda-"


def test_datum_from_dict():
    ext = extend_cartan(preset("B2"), "2", "+")
    again = CartanDatum.from_dict(ext.to_dict())
    assert again == ext
    assert again.ext_i == "2" and again.ext_sign == "+"
