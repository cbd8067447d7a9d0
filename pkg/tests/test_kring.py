import pytest

from quiver_hecke.characters import Laurent
from quiver_hecke.errors import UnknownGenerator
from quiver_hecke.kring import ONE, KClassRing

q = Laurent.monomial(1)


@pytest.fixture
def ring():
    # [a][p] = q [p][a] + [C]
    return KClassRing(("a", "b", "p"), "p", {"a": [(q, ("p", "a"), 0), (ONE, (), 1)]})


def test_rewrite_moves_plus_left(ring):
    out = ring.mul(ring.letter("a"), ring.letter("p"))
    assert out == {(("p", "a"), 0): q, ((), 1): ONE}


def test_already_normal(ring):
    assert ring.mul(ring.letter("p"), ring.letter("a")) == {(("p", "a"), 0): ONE}


def test_C_is_central_power(ring):
    assert ring.mul(ring.C(2), ring.C(-1)) == ring.C(1)
    assert ring.mul(ring.C(1), ring.C(-1)) == ring.one()


def test_two_crossings(ring):
    a, p = ring.letter("a"), ring.letter("p")
    lhs = ring.mul(a, a, p)
    rhs = ring.add(
        ring.scale(ring.mul(p, a, a), q * q),
        ring.scale(ring.mul(a, ring.C()), q),
        ring.mul(a, ring.C()),
    )
    assert ring.equal(lhs, rhs)


def test_add_cancels(ring):
    a = ring.letter("a")
    assert ring.add(a, ring.scale(a, -ONE)) == {}
    assert ring.scalar(Laurent()) == {}


def test_unknown_letter(ring):
    with pytest.raises(UnknownGenerator):
        ring.letter("z")


def test_missing_rule(ring):
    with pytest.raises(UnknownGenerator):
        ring.mul(ring.letter("b"), ring.letter("p"))


def test_render(ring):
    assert ring.render({}) == "0"
    assert "[C]^2" in ring.render(ring.C(2))
    assert "[p][a]" in ring.render(ring.mul(ring.letter("a"), ring.letter("p")))
