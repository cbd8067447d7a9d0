"""Exact sparse linear algebra on top of sympy's DomainMatrix / SDM."""

import logging
from typing import Iterable, Mapping, Sequence

from sympy.polys.domains.domain import Domain
from sympy.polys.matrices import DomainMatrix
from sympy.polys.matrices.sdm import SDM

logger = logging.getLogger(__name__)

# Sparse vectors are {index: coefficient} with no stored zeros.
Vec = dict[int, object]


def matrix(
    dod: Mapping[int, Mapping[int, object]], shape: tuple[int, int], K: Domain
) -> DomainMatrix:
    """DomainMatrix from a dict of rows, dropping zeros."""
    clean = {}
    for i, row in dod.items():
        r = {j: v for j, v in row.items() if v}
        if r:
            clean[i] = r
    return DomainMatrix(clean, shape, K)


def zeros(rows: int, cols: int, K: Domain) -> DomainMatrix:
    return DomainMatrix({}, (rows, cols), K)


def identity(n: int, K: Domain) -> DomainMatrix:
    return DomainMatrix({i: {i: K.one} for i in range(n)}, (n, n), K)


def from_columns(columns: Sequence[Vec], nrows: int, K: Domain) -> DomainMatrix:
    dod: dict[int, dict[int, object]] = {}
    for j, col in enumerate(columns):
        for i, v in col.items():
            if v:
                dod.setdefault(i, {})[j] = v
    return DomainMatrix(dod, (nrows, len(columns)), K)


def rows_of(M: DomainMatrix) -> dict[int, dict[int, object]]:
    return {i: dict(row) for i, row in M.to_sdm().items()}


def columns_of(M: DomainMatrix) -> dict[int, Vec]:
    cols: dict[int, Vec] = {}
    for i, row in M.to_sdm().items():
        for j, v in row.items():
            cols.setdefault(j, {})[i] = v
    return cols


def is_zero(M: DomainMatrix) -> bool:
    return not any(M.to_sdm().values())


def entries(M: DomainMatrix) -> Iterable[tuple[int, int, object]]:
    for i, row in M.to_sdm().items():
        for j, v in row.items():
            yield i, j, v


def apply(M: DomainMatrix, vec: Vec) -> Vec:
    """M @ vec for a sparse vector."""
    out: Vec = {}
    for i, row in M.to_sdm().items():
        total = None
        for j, v in row.items():
            x = vec.get(j)
            if x:
                total = v * x if total is None else total + v * x
        if total:
            out[i] = total
    return out


def vec_add(acc: Vec, vec: Mapping[int, object], scale=None) -> None:
    for i, v in vec.items():
        value = v if scale is None else v * scale
        new = acc.get(i)
        new = value if new is None else new + value
        if new:
            acc[i] = new
        else:
            acc.pop(i, None)


def rank(M: DomainMatrix) -> int:
    if is_zero(M):
        return 0
    _, pivots = M.to_sdm().rref()
    return len(pivots)


def nullspace(M: DomainMatrix) -> list[Vec]:
    """Basis of the right kernel {v : M v = 0} over a field."""
    ncols = M.shape[1]
    if ncols == 0:
        return []
    if is_zero(M):
        return [{j: M.domain.one} for j in range(ncols)]
    basis, _ = M.to_sdm().nullspace()
    return [dict(row) for _, row in sorted(basis.items())]


def solve_homogeneous(rows: Iterable[Mapping[int, object]], ncols: int, K: Domain) -> list[Vec]:
    """Kernel of the system whose equations are the given sparse rows."""
    dod = {}
    for row in rows:
        r = {j: v for j, v in row.items() if v}
        if r:
            dod[len(dod)] = r
    logger.debug("homogeneous solve: %d equations, %d unknowns", len(dod), ncols)
    return nullspace(DomainMatrix(dod, (max(len(dod), 1), ncols), K))


def row_reduce(
    rows: Sequence[Mapping[int, object]], ncols: int, K: Domain
) -> tuple[list[Vec], list[int]]:
    """Reduced row echelon form of the span of rows: (nonzero rows, pivot columns)."""
    dod = {}
    for row in rows:
        r = {j: v for j, v in row.items() if v}
        if r:
            dod[len(dod)] = r
    if not dod:
        return [], []
    reduced, pivots = SDM(dod, (len(dod), ncols), K).rref()
    return [dict(reduced[i]) for i in range(len(pivots))], list(pivots)


def column_space_rank(columns: Sequence[Vec], nrows: int, K: Domain) -> int:
    return len(row_reduce(list(columns), nrows, K)[1])


def solve(A: DomainMatrix, b: Vec) -> Vec | None:
    """One solution of A v = b, or None."""
    nrows, ncols = A.shape
    aug = rows_of(A)
    for i, v in b.items():
        aug.setdefault(i, {})[ncols] = v
    reduced, pivots = row_reduce([aug.get(i, {}) for i in range(nrows)], ncols + 1, A.domain)
    if ncols in pivots:
        return None
    sol: Vec = {}
    for row, p in zip(reduced, pivots):
        value = row.get(ncols)
        if value:
            sol[p] = value
    return sol


def trace_product(A: DomainMatrix, B: DomainMatrix):
    """tr(AB) without forming the product."""
    rows = rows_of(B)
    total = A.domain.zero
    for i, j, v in entries(A):
        w = rows.get(j, {}).get(i)
        if w:
            total += v * w
    return total


def determinant(M: DomainMatrix):
    return M.det()


def is_scalar_identity(M: DomainMatrix):
    """Return c when M = c * id, else None."""
    n, m = M.shape
    if n != m:
        return None
    rows = rows_of(M)
    scalar = None
    for i in range(n):
        row = rows.get(i, {})
        if any(j != i for j in row):
            return None
        value = row.get(i, M.domain.zero)
        if scalar is None:
            scalar = value
        elif value != scalar:
            return None
    return scalar if scalar is not None else M.domain.zero


class IncrementalBasis:
    """Echelon basis of a growing span; add() reports whether a vector was new."""

    def __init__(self, K: Domain):
        self.K = K
        self.rows: dict[int, Vec] = {}

    def reduce(self, vec: Mapping[int, object]) -> Vec:
        out = {i: v for i, v in vec.items() if v}
        for p in sorted(self.rows):
            c = out.get(p)
            if c:
                vec_add(out, self.rows[p], -c)
        return out

    def add(self, vec: Mapping[int, object]) -> bool:
        reduced = self.reduce(vec)
        if not reduced:
            return False
        p = min(reduced)
        inv = self.K.one / reduced[p]
        row = {i: v * inv for i, v in reduced.items()}
        for other in self.rows.values():
            c = other.get(p)
            if c:
                vec_add(other, row, -c)
        self.rows[p] = row
        return True

    def __len__(self) -> int:
        return len(self.rows)

    def contains(self, vec: Mapping[int, object]) -> bool:
        return not self.reduce(vec)


def proportionality(F: DomainMatrix, G: DomainMatrix):
    """The c with F = c * G, or None; G must be nonzero."""
    if F.shape != G.shape:
        return None
    first = next((e for e in entries(G) if e[2]), None)
    if first is None:
        return None
    i, j, g = first
    c = F.domain.quo(rows_of(F).get(i, {}).get(j, F.domain.zero), g)
    return c if F == G * c else None
