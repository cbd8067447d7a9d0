"""Permutations in one-line notation, reduced words and shuffles.

A permutation of n letters is a tuple p with p[k] the image of position k
(positions are 0-based). s_l swaps l and l+1. Products follow composition of
maps: (p * q)(k) = p(q(k)), so a word (l1, ..., lr) names s_l1 * ... * s_lr.
"""

from functools import lru_cache
from itertools import combinations, permutations
from typing import Iterator, Sequence

Perm = tuple[int, ...]
Word = tuple[int, ...]


def identity(n: int) -> Perm:
    return tuple(range(n))


def transposition(l: int, n: int) -> Perm:
    p = list(range(n))
    p[l], p[l + 1] = p[l + 1], p[l]
    return tuple(p)


def compose(p: Perm, q: Perm) -> Perm:
    """p after q."""
    return tuple(p[k] for k in q)


def inverse(p: Perm) -> Perm:
    inv = [0] * len(p)
    for k, v in enumerate(p):
        inv[v] = k
    return tuple(inv)


def length(p: Perm) -> int:
    n = len(p)
    return sum(1 for a in range(n) for b in range(a + 1, n) if p[a] > p[b])


def left_multiply(l: int, p: Perm) -> Perm:
    """s_l * p: swap the values l and l+1."""
    return tuple(l + 1 if v == l else l if v == l + 1 else v for v in p)


def is_left_descent(l: int, p: Perm) -> bool:
    """True when length(s_l * p) < length(p), i.e. value l+1 sits left of value l."""
    return p.index(l + 1) < p.index(l)


def left_descents(p: Perm) -> list[int]:
    return [l for l in range(len(p) - 1) if is_left_descent(l, p)]


def act(p: Perm, word: Sequence) -> tuple:
    """Place action on words: (p nu)_{p(k)} = nu_k."""
    out = [None] * len(word)
    for k, letter in enumerate(word):
        out[p[k]] = letter
    return tuple(out)


@lru_cache(maxsize=None)
def lexmin_word(p: Perm) -> Word:
    """Lexicographically smallest reduced word of p."""
    descents = left_descents(p)
    if not descents:
        return ()
    l = descents[0]
    return (l,) + lexmin_word(left_multiply(l, p))


def from_word(word: Sequence[int], n: int) -> Perm:
    p = identity(n)
    for l in reversed(word):
        p = left_multiply(l, p)
    return p


def is_reduced(word: Sequence[int], n: int) -> bool:
    return length(from_word(word, n)) == len(word)


def reduced_words(p: Perm) -> Iterator[Word]:
    """Every reduced word of p; exponential, meant for small n."""
    descents = left_descents(p)
    if not descents:
        yield ()
        return
    for l in descents:
        for tail in reduced_words(left_multiply(l, p)):
            yield (l,) + tail


def all_perms(n: int) -> Iterator[Perm]:
    return permutations(range(n))


def direct_sum(p: Perm, q: Perm) -> Perm:
    """p x q acting on the first len(p) and the last len(q) positions."""
    m = len(p)
    return tuple(p) + tuple(m + v for v in q)


def shift_word(word: Sequence[int], offset: int) -> Word:
    return tuple(l + offset for l in word)


@lru_cache(maxsize=None)
def shuffles(m: int, n: int) -> tuple[Perm, ...]:
    """Minimal length representatives of S_{m+n} / (S_m x S_n).

    These are the permutations increasing on [0, m) and on [m, m+n), listed by
    the image of the first block in lexicographic order.
    """
    out = []
    total = m + n
    for first in combinations(range(total), m):
        rest = [v for v in range(total) if v not in first]
        out.append(tuple(first) + tuple(rest))
    return tuple(out)


def parabolic_factor(p: Perm, m: int) -> tuple[Perm, Perm, Perm]:
    """Split p = sigma * (p1 x p2) with sigma a shuffle for the block sizes (m, n - m)."""
    first = sorted(p[:m])
    rest = sorted(p[m:])
    sigma = tuple(first) + tuple(rest)
    inner = compose(inverse(sigma), p)
    p1 = inner[:m]
    p2 = tuple(v - m for v in inner[m:])
    return sigma, p1, p2


def block_swap(m: int, n: int) -> Perm:
    """w[m, n]: sends k to k + n for k < m and k to k - m otherwise."""
    return tuple(k + n if k < m else k - m for k in range(m + n))


def _alternating(a: int, b: int, size: int) -> Word:
    return tuple(a if t % 2 == 0 else b for t in range(size))


def move_sequence(word: Sequence[int], prefix: Sequence[int]) -> list[tuple[int, Word, Word]]:
    """
    Commutation and braid moves turning a reduced word into one starting with prefix.

    ``prefix`` must be a reduced word that is a left factor of the permutation
    named by ``word``. Each move is (position, old_segment, new_segment).
    """
    moves: list[tuple[int, Word, Word]] = []
    current = list(word)

    def bring(start: int, target: Sequence[int]) -> None:
        for offset, letter in enumerate(target):
            to_front(start + offset, letter)

    def to_front(start: int, letter: int) -> None:
        head = current[start]
        if head == letter:
            return
        size = 2 if abs(head - letter) > 1 else 3
        before = _alternating(head, letter, size)
        bring(start + 1, before[1:])
        after = _alternating(letter, head, size)
        current[start:start + size] = after
        moves.append((start, before, after))

    bring(0, tuple(prefix))
    return moves


def apply_move(word: Sequence[int], move: tuple[int, Word, Word]) -> Word:
    pos, old, new = move
    assert tuple(word[pos:pos + len(old)]) == old
    return tuple(word[:pos]) + new + tuple(word[pos + len(old):])
