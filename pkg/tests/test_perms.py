from math import comb, factorial

import pytest
from hypothesis import given
from hypothesis import strategies as st

from quiver_hecke import perms

perm4 = st.permutations(range(4)).map(tuple)


def test_transposition_and_length():
    s = perms.transposition(1, 4)
    assert s == (0, 2, 1, 3)
    assert perms.length(s) == 1
    assert perms.length((3, 2, 1, 0)) == 6


@given(perm4, perm4)
def test_compose_inverse(p, q):
    assert perms.compose(p, perms.inverse(p)) == perms.identity(4)
    assert perms.length(perms.inverse(p)) == perms.length(p)
    assert perms.length(perms.compose(p, q)) <= perms.length(p) + perms.length(q)


@given(perm4)
def test_lexmin_word_is_reduced(p):
    word = perms.lexmin_word(p)
    assert len(word) == perms.length(p)
    assert perms.from_word(word, 4) == p
    assert perms.is_reduced(word, 4)


@given(perm4)
def test_reduced_words_all_name_p(p):
    words = list(perms.reduced_words(p))
    assert len(set(words)) == len(words)
    assert all(perms.from_word(w, 4) == p for w in words)


def test_longest_element_in_s3_has_two_reduced_words():
    assert sorted(perms.reduced_words((2, 1, 0))) == [(0, 1, 0), (1, 0, 1)]


def test_act_moves_letters():
    assert perms.act(perms.transposition(0, 3), ("a", "b", "c")) == ("b", "a", "c")


@pytest.mark.parametrize("m,n", [(1, 1), (2, 1), (2, 2), (1, 3)])
def test_shuffles(m, n):
    reps = perms.shuffles(m, n)
    assert len(reps) == comb(m + n, m)
    for sigma in reps:
        assert list(sigma[:m]) == sorted(sigma[:m])
        assert list(sigma[m:]) == sorted(sigma[m:])


@given(perm4, st.integers(0, 4))
def test_parabolic_factor(p, m):
    sigma, p1, p2 = perms.parabolic_factor(p, m)
    assert sigma in perms.shuffles(m, 4 - m)
    assert perms.compose(sigma, perms.direct_sum(p1, p2)) == p
    assert perms.length(p) == perms.length(sigma) + perms.length(p1) + perms.length(p2)


def test_block_swap():
    w = perms.block_swap(1, 2)
    assert w == (2, 0, 1)
    assert perms.length(w) == 2


def test_all_perms_count():
    assert len(list(perms.all_perms(4))) == factorial(4)


@pytest.mark.parametrize("word,prefix", [((0, 1, 0), (1,)), ((0, 2), (2,)),
                                         ((0, 1, 0, 2), (1, 0))])
def test_move_sequence(word, prefix):
    current = tuple(word)
    for move in perms.move_sequence(word, prefix):
        current = perms.apply_move(current, move)
    assert current[:len(prefix)] == tuple(prefix)
    assert perms.from_word(current, 4) == perms.from_word(word, 4)
