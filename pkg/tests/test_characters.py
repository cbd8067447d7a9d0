from hypothesis import given
from hypothesis import strategies as st

from quiver_hecke.characters import KClass, Laurent, QCharacter, floor_of, half, shuffle_product

halves = st.integers(-6, 6).map(lambda n: half(n) / 2)
laurents = st.dictionaries(halves, st.integers(-3, 3), max_size=4).map(Laurent.from_dict)


def test_half_parses_strings():
    assert half("1/2") * 2 == 1
    assert floor_of("-1/2") == -1
    assert floor_of(3) == 3


@given(laurents, laurents)
def test_laurent_ring_laws(a, b):
    assert a + b == b + a
    assert a * b == b * a
    assert (a - a).is_zero()
    assert (a * b).at_one() == a.at_one() * b.at_one()


@given(laurents)
def test_bar_is_an_involution(a):
    assert a.bar().bar() == a
    assert a.shift(1).bar() == a.bar().shift(-1)


def test_laurent_drops_zero_terms():
    assert Laurent.from_dict({0: 1, 1: 0}) == Laurent.monomial(0)
    assert str(Laurent.monomial(1) + Laurent.monomial(-1)) in ("q + 1/q", "1/q + q")


def test_character_from_basis():
    ch = QCharacter.from_basis([(("1", "2"), 0), (("1", "2"), 2), (("2", "1"), 1)])
    assert ch.dimension() == 3
    assert ch.words() == [("1", "2"), ("2", "1")]
    assert ch.table[("1", "2")] == Laurent.from_dict({0: 1, 2: 1})


def test_character_difference_is_a_kclass():
    a = QCharacter.from_basis([(("1",), 0)])
    diff = a - a.shift(1)
    assert isinstance(diff, KClass)
    assert not diff.is_nonnegative()
    assert (diff + a.shift(1)) == a


def test_truncate():
    ch = QCharacter.from_basis([(("1",), 0), (("1",), 2), (("1",), 4)])
    assert ch.truncate(2).dimension() == 2


def test_character_dict_round_trip():
    ch = QCharacter.from_basis([(("1", "2"), "1/2"), (("2", "1"), -1)])
    assert QCharacter.from_dict(ch.to_dict()) == ch


def test_shuffle_product_of_letters():
    """ch<1> * ch<2> with a tau of degree 1 across different letters."""
    one = QCharacter.from_basis([(("1",), 0)])
    two = QCharacter.from_basis([(("2",), 0)])

    def tau_degree(sigma, word):
        return 0 if sigma == (0, 1) else 1

    prod = shuffle_product(one, two, tau_degree)
    assert prod.table[("1", "2")] == Laurent.monomial(0)
    assert prod.table[("2", "1")] == Laurent.monomial(1)
    assert prod.dimension() == 2
