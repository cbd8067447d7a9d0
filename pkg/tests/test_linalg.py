from hypothesis import given, settings
from hypothesis import strategies as st
from sympy.polys.domains import QQ

from quiver_hecke import linalg

entries = st.integers(-3, 3)
small = st.lists(st.lists(entries, min_size=3, max_size=3), min_size=1, max_size=4)


def as_matrix(rows):
    return linalg.matrix(
        {i: {j: QQ(v) for j, v in enumerate(row)} for i, row in enumerate(rows)},
        (len(rows), 3), QQ,
    )


@settings(max_examples=50)
@given(small)
def test_rank_nullity(rows):
    M = as_matrix(rows)
    kernel = linalg.nullspace(M)
    assert linalg.rank(M) + len(kernel) == 3
    for vec in kernel:
        assert linalg.apply(M, vec) == {}


@settings(max_examples=50)
@given(small, st.lists(entries, min_size=3, max_size=3))
def test_solve_finds_preimages(rows, x):
    M = as_matrix(rows)
    b = linalg.apply(M, {j: QQ(v) for j, v in enumerate(x) if v})
    sol = linalg.solve(M, b)
    assert sol is not None
    assert linalg.apply(M, sol) == b


def test_solve_inconsistent():
    M = as_matrix([[1, 0, 0], [1, 0, 0]])
    assert linalg.solve(M, {0: QQ(1)}) is None


def test_incremental_basis():
    basis = linalg.IncrementalBasis(QQ)
    assert basis.add({0: QQ(1), 1: QQ(1)})
    assert basis.add({1: QQ(2)})
    assert not basis.add({0: QQ(3)})
    assert len(basis) == 2
    assert basis.contains({0: QQ(1), 1: QQ(-5)})
    assert not basis.contains({2: QQ(1)})


def test_scalar_identity_and_proportionality():
    Id = linalg.identity(3, QQ)
    assert linalg.is_scalar_identity(Id * QQ(4)) == QQ(4)
    assert linalg.is_scalar_identity(as_matrix([[1, 1, 0], [0, 1, 0], [0, 0, 1]])) is None
    A = as_matrix([[1, 2, 0]])
    assert linalg.proportionality(A * QQ(-3), A) == QQ(-3)
    assert linalg.proportionality(as_matrix([[1, 0, 0]]), A) is None


def test_columns_round_trip():
    cols = [{0: QQ(1)}, {}, {1: QQ(2), 2: QQ(1)}]
    M = linalg.from_columns(cols, 3, QQ)
    assert linalg.columns_of(M) == {0: {0: QQ(1)}, 2: {1: QQ(2), 2: QQ(1)}}
    assert linalg.column_space_rank(cols, 3, QQ) == 2


square = st.lists(st.lists(entries, min_size=3, max_size=3), min_size=3, max_size=3)


@settings(max_examples=30, deadline=None)
@given(square, square)
def test_trace_product(a, b):
    A, B = as_matrix(a), as_matrix(b)
    diagonal = [v for i, j, v in linalg.entries(A.matmul(B)) if i == j]
    assert linalg.trace_product(A, B) == sum(diagonal, QQ(0))
