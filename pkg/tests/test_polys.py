import pytest
from sympy import Poly, expand, symbols
from sympy.polys.domains import QQ

from quiver_hecke.cartan import extend_cartan, preset
from quiver_hecke.polys import default_qparams, divided_Q, field_domain, q_expr, qbar

u, v, w = symbols("u v w")


def test_field_domain():
    assert field_domain("Q") == QQ
    assert field_domain("Fp:5").characteristic() == 5
    assert field_domain("GF(7)").characteristic() == 7
    for bad in ("Fp:2", "Fp:9", "R"):
        with pytest.raises(ValueError):
            field_domain(bad)


def test_default_q_on_edges():
    params = default_qparams(preset("B2"))
    assert expand(q_expr(params, "1", "2", u, v)) == u + v**2
    assert expand(q_expr(params, "2", "1", u, v)) == u**2 + v
    assert q_expr(params, "1", "1", u, v) == 0


def test_default_q_off_edges():
    params = default_qparams(preset("A3"))
    assert q_expr(params, "1", "3", u, v) == 1


def test_extended_q():
    params = default_qparams(extend_cartan(preset("A2"), "1", "+"))
    assert expand(q_expr(params, "1+", "1", u, v)) == u - v
    assert expand(q_expr(params, "1", "1+", u, v)) == v - u
    assert q_expr(params, "1+", "2", u, v) == 1


def test_validate_rejects_asymmetric_q():
    params = default_qparams(preset("A2"))
    params.table[("1", "2")] = {(1, 0): QQ.one, (0, 1): QQ(2)}
    with pytest.raises(ValueError):
        params.validate()


def test_qbar_of_u_squared():
    # (u^2 - w^2) / (u - w) = u + w, keyed by (u, v, w) exponents
    assert qbar({(2, 0): 1}) == {(0, 0, 1): 1, (1, 0, 0): 1}


def test_divided_difference():
    params = default_qparams(preset("B2"))
    # Q_{2,1}(u, v) = u^2 + v, so the first divided difference in u is u1 + u2
    assert divided_Q(params, "2", "1", [u, w], v) == Poly(u + w, u, w, v, domain="QQ")
    assert divided_Q(params, "2", "1", [u], v) == Poly(u**2 + v, u, v, domain="QQ")
    with pytest.raises(ValueError):
        divided_Q(params, "2", "1", [], v)
