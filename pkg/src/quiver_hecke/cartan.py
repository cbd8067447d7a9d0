"""Cartan data, root-lattice arithmetic and grade associators."""

import logging
from dataclasses import dataclass, field
from typing import Iterable, Optional, Sequence

from quiver_hecke.errors import AssociatorInconsistent, NotGCM, NotSymmetrizable, add_note

logger = logging.getLogger(__name__)

PRESETS: dict[str, tuple[list[list[int]], tuple[int, ...]]] = {
    "A1": ([[2]], (1,)),
    "A2": ([[2, -1], [-1, 2]], (1, 1)),
    "A3": ([[2, -1, 0], [-1, 2, -1], [0, -1, 2]], (1, 1, 1)),
    "B2": ([[2, -1], [-2, 2]], (2, 1)),
    "C2": ([[2, -2], [-1, 2]], (1, 2)),
}


@dataclass(frozen=True)
class RootVector:
    """An element sum_j b_j alpha_j of the root lattice, indexed like its datum."""

    coeffs: tuple[int, ...]

    def __add__(self, other: "RootVector") -> "RootVector":
        return RootVector(tuple(a + b for a, b in zip(self.coeffs, other.coeffs)))

    def __sub__(self, other: "RootVector") -> "RootVector":
        return RootVector(tuple(a - b for a, b in zip(self.coeffs, other.coeffs)))

    def __neg__(self) -> "RootVector":
        return RootVector(tuple(-a for a in self.coeffs))

    def scale(self, n: int) -> "RootVector":
        return RootVector(tuple(n * a for a in self.coeffs))

    @property
    def height(self) -> int:
        return sum(abs(a) for a in self.coeffs)

    def is_zero(self) -> bool:
        return not any(self.coeffs)


@dataclass(frozen=True)
class CartanDatum:
    """A symmetrizable generalized Cartan matrix with its symmetric form.

    When the datum was produced by ``extend_cartan`` the fields ``base``,
    ``ext_i`` and ``ext_sign`` record where it came from.
    """

    index_set: tuple[str, ...]
    gcm: tuple[tuple[int, ...], ...]
    symmetrizers: tuple[int, ...]
    base: Optional["CartanDatum"] = field(default=None, compare=False)
    ext_i: Optional[str] = None
    ext_sign: Optional[str] = None

    @property
    def rank(self) -> int:
        return len(self.index_set)

    def pos(self, label: str) -> int:
        try:
            return self.index_set.index(label)
        except ValueError as e:
            raise KeyError(f"unknown index {label!r}; index set is {self.index_set}") from e

    def c(self, j: str, k: str) -> int:
        return self.gcm[self.pos(j)][self.pos(k)]

    def d(self, j: str) -> int:
        return self.symmetrizers[self.pos(j)]

    def form(self, j: str, k: str) -> int:
        """(alpha_j, alpha_k) = d_j c_jk."""
        p = self.pos(j)
        return self.symmetrizers[p] * self.gcm[p][self.pos(k)]

    def root(self, label: str) -> RootVector:
        coeffs = [0] * self.rank
        coeffs[self.pos(label)] = 1
        return RootVector(tuple(coeffs))

    def zero(self) -> RootVector:
        return RootVector((0,) * self.rank)

    def weight_of_word(self, word: Iterable[str]) -> RootVector:
        coeffs = [0] * self.rank
        for label in word:
            coeffs[self.pos(label)] += 1
        return RootVector(tuple(coeffs))

    def root_from_labels(self, labels: dict[str, int]) -> RootVector:
        coeffs = [0] * self.rank
        for label, n in labels.items():
            coeffs[self.pos(label)] += n
        return RootVector(tuple(coeffs))

    def pair(self, beta: RootVector, gamma: RootVector) -> int:
        """Bilinear form extended to the root lattice."""
        total = 0
        for p, b in enumerate(beta.coeffs):
            if not b:
                continue
            for q, g in enumerate(gamma.coeffs):
                if g:
                    total += b * g * self.symmetrizers[p] * self.gcm[p][q]
        return total

    def q_i(self, label: str) -> int:
        """Exponent of q_i = q^{d_i}."""
        return self.d(label)

    def is_extended(self) -> bool:
        return self.base is not None

    def plus_label(self) -> str:
        if self.ext_i is None or self.ext_sign is None:
            raise ValueError("datum is not an extended datum")
        return extended_label(self.ext_i, self.ext_sign)

    def base_labels(self) -> tuple[str, ...]:
        if self.base is None:
            return self.index_set
        return self.base.index_set

    def to_dict(self) -> dict:
        """Convert to dictionary for JSON serialization."""
        data = {
            "index_set": list(self.index_set),
            "gcm": [list(row) for row in self.gcm],
            "symmetrizers": list(self.symmetrizers),
        }
        if self.base is not None:
            data["extension"] = {
                "base": self.base.to_dict(),
                "i": self.ext_i,
                "sign": self.ext_sign,
            }
        return data

    @classmethod
    def from_dict(cls, data: dict) -> "CartanDatum":
        """Create CartanDatum from dictionary."""
        if "extension" in data:
            ext = data["extension"]
            return extend_cartan(cls.from_dict(ext["base"]), ext["i"], ext["sign"])
        return build_cartan(data["gcm"], data["symmetrizers"], data.get("index_set"))


def extended_label(i: str, sign: str) -> str:
    if sign not in ("+", "-"):
        raise ValueError(f"sign must be '+' or '-', got {sign!r}")
    return f"{i}{sign}"


def build_cartan(
    matrix: Sequence[Sequence[int]],
    symmetrizers: Sequence[int],
    labels: Optional[Sequence[str]] = None,
) -> CartanDatum:
    """
    Validate a generalized Cartan matrix and its symmetrizers.

    Args:
        matrix: square integer matrix
        symmetrizers: positive integers d_j with d_j c_jk = d_k c_kj
        labels: index labels (defaults to "1", "2", ...)

    Returns:
        The validated CartanDatum

    Raises:
        NotGCM: diagonal entry != 2, positive off-diagonal entry or asymmetric zero pattern
        NotSymmetrizable: the symmetrizers fail to symmetrize the matrix
    """
    n = len(matrix)
    if any(len(row) != n for row in matrix):
        raise NotGCM("matrix is not square")
    if labels is None:
        labels = [str(k + 1) for k in range(n)]
    if len(labels) != n or len(set(labels)) != n:
        raise NotGCM("labels must be distinct and match the matrix size")
    if len(symmetrizers) != n or any(int(d) <= 0 for d in symmetrizers):
        raise NotSymmetrizable("symmetrizers must be positive, one per index")

    for j in range(n):
        if matrix[j][j] != 2:
            raise NotGCM(f"diagonal entry c[{j}][{j}] = {matrix[j][j]} != 2")
        for k in range(n):
            if j == k:
                continue
            if matrix[j][k] > 0:
                raise NotGCM(f"positive off-diagonal entry c[{j}][{k}] = {matrix[j][k]}")
            if (matrix[j][k] == 0) != (matrix[k][j] == 0):
                raise NotGCM(f"zero pattern not symmetric at ({j}, {k})")
            if symmetrizers[j] * matrix[j][k] != symmetrizers[k] * matrix[k][j]:
                raise NotSymmetrizable(f"d_{j} c_{j}{k} != d_{k} c_{k}{j}")

    return CartanDatum(
        index_set=tuple(str(label) for label in labels),
        gcm=tuple(tuple(int(v) for v in row) for row in matrix),
        symmetrizers=tuple(int(d) for d in symmetrizers),
    )


def preset(name: str) -> CartanDatum:
    """Cartan datum for one of the named finite types."""
    try:
        matrix, d = PRESETS[name.upper()]
    except KeyError as e:
        raise ValueError(f"unknown Cartan type {name!r}; choose from {sorted(PRESETS)}") from e
    return build_cartan(matrix, d)


def extend_cartan(datum: CartanDatum, i: str, sign: str) -> CartanDatum:
    """
    Adjoin the extra vertex i+ (or i-) attached to i alone.

    The new vertex has the same symmetrizer as i and c(i, i±) = c(i±, i) = -1,
    so (alpha_i, alpha_i±) = -(alpha_i, alpha_i)/2.
    """
    datum.pos(i)
    new = extended_label(i, sign)
    if new in datum.index_set:
        raise ValueError(f"label {new!r} already present")
    n = datum.rank
    p = datum.pos(i)
    rows = [list(row) + [-1 if k == p else 0] for k, row in enumerate(datum.gcm)]
    rows.append([-1 if k == p else 0 for k in range(n)] + [2])
    ext = build_cartan(rows, list(datum.symmetrizers) + [datum.symmetrizers[p]],
                       list(datum.index_set) + [new])
    return CartanDatum(ext.index_set, ext.gcm, ext.symmetrizers, base=datum, ext_i=i,
                       ext_sign=sign)


@dataclass(frozen=True)
class GradeAssociator:
    """Integer matrix lambda(alpha_j, alpha_k) on simple roots.

    The derived form c(beta, gamma) = lambda(beta, gamma) + (beta, gamma) is skew
    exactly when lambda is a grade associator.
    """

    datum: CartanDatum
    matrix: tuple[tuple[int, ...], ...]
    name: str = "custom"

    def value(self, j: str, k: str) -> int:
        return self.matrix[self.datum.pos(j)][self.datum.pos(k)]

    def __call__(self, beta: RootVector, gamma: RootVector) -> int:
        total = 0
        for p, b in enumerate(beta.coeffs):
            if not b:
                continue
            for q, g in enumerate(gamma.coeffs):
                if g:
                    total += b * g * self.matrix[p][q]
        return total

    def skew(self, beta: RootVector, gamma: RootVector) -> int:
        return self(beta, gamma) + self.datum.pair(beta, gamma)

    def validate(self) -> None:
        labels = self.datum.index_set
        for j in labels:
            for k in labels:
                lhs = self.value(j, k) + self.value(k, j)
                if lhs != -2 * self.datum.form(j, k):
                    raise AssociatorInconsistent(
                        f"{self.name}: lambda({j},{k}) + lambda({k},{j}) = {lhs}, "
                        f"expected {-2 * self.datum.form(j, k)}"
                    )

    def to_dict(self) -> dict:
        """Convert to dictionary for JSON serialization."""
        return {"name": self.name, "matrix": [list(row) for row in self.matrix]}


def canonical_associator(datum: CartanDatum) -> GradeAssociator:
    """The standard grading lambda_can = -(., .)."""
    labels = datum.index_set
    matrix = tuple(tuple(-datum.form(j, k) for k in labels) for j in labels)
    return GradeAssociator(datum, matrix, "canonical")


def associator_from_skew(datum: CartanDatum, skew: dict[tuple[str, str], int]) -> GradeAssociator:
    """
    Build lambda = -(., .) + c from skew values c(alpha_j, alpha_k), j before k.

    Raises:
        AssociatorInconsistent: if a diagonal or repeated entry breaks skewness
    """
    labels = datum.index_set
    rows = [[-datum.form(j, k) for k in labels] for j in labels]
    for (j, k), value in skew.items():
        if j == k and value:
            raise AssociatorInconsistent("skew form must vanish on the diagonal")
        rows[datum.pos(j)][datum.pos(k)] += value
        rows[datum.pos(k)][datum.pos(j)] -= value
    assoc = GradeAssociator(datum, tuple(tuple(r) for r in rows), "skewed")
    assoc.validate()
    return assoc


def lambda_pm(extended: CartanDatum, i: str, sign: str) -> GradeAssociator:
    """
    The modified grade associator on an extended datum.

    Raises:
        AssociatorInconsistent: if the defining clauses fail the associator condition
    """
    if extended.ext_i != i or extended.ext_sign != sign:
        raise ValueError(f"datum was not extended at ({i}, {sign})")
    ext = extended_label(i, sign)
    base = extended.base_labels()
    labels = extended.index_set
    rows = {(j, k): -extended.form(j, k) for j in base for k in base}
    rows[(ext, ext)] = -extended.form(i, i)
    if sign == "+":
        rows[(i, ext)] = 0
        for j in base:
            rows[(ext, j)] = extended.form(i, j)
            if j != i:
                rows[(j, ext)] = -extended.form(i, j)
    else:
        rows[(ext, i)] = 0
        for j in base:
            rows[(j, ext)] = extended.form(i, j)
            if j != i:
                rows[(ext, j)] = -extended.form(i, j)
    matrix = tuple(tuple(rows[(j, k)] for k in labels) for j in labels)
    assoc = GradeAssociator(extended, matrix, f"lambda{sign}")
    try:
        assoc.validate()
    except AssociatorInconsistent as err:
        add_note(err, f"while building lambda{sign} at i={i}")
        raise
    logger.debug("built %s on %s", assoc.name, labels)
    return assoc


def associator_by_name(datum: CartanDatum, name: str) -> GradeAssociator:
    """Resolve 'canonical', 'lambda+' or 'lambda-' on a datum."""
    if name == "canonical":
        return canonical_associator(datum)
    if name in ("lambda+", "lambda-"):
        if datum.ext_i is None or datum.ext_sign != name[-1]:
            raise ValueError(f"{name} requires a datum extended with sign {name[-1]}")
        return lambda_pm(datum, datum.ext_i, datum.ext_sign)
    raise ValueError(f"unknown associator {name!r}")
