"""Spaces of graded module homomorphisms, computed by exact linear solves."""

import logging
import random
from dataclasses import dataclass, field
from typing import Optional

from sympy.polys.matrices import DomainMatrix

from quiver_hecke import linalg
from quiver_hecke.characters import half
from quiver_hecke.errors import AlgebraMismatch, HypothesisFailed
from quiver_hecke.gmod import GradedModule, map_is_homomorphism

logger = logging.getLogger(__name__)


@dataclass
class HomSpace:
    """Homogeneous basis of HOM(M, N): a list of (degree, matrix N x M)."""

    source: GradedModule
    target: GradedModule
    maps: list[tuple[object, DomainMatrix]] = field(default_factory=list)

    @property
    def dim(self) -> int:
        return len(self.maps)

    def degrees(self) -> list:
        return sorted({d for d, _ in self.maps})

    def of_degree(self, d) -> list[DomainMatrix]:
        d = half(d)
        return [m for e, m in self.maps if e == d]

    def dims(self) -> dict:
        out: dict = {}
        for d, _ in self.maps:
            out[d] = out.get(d, 0) + 1
        return dict(sorted(out.items()))

    def to_dict(self) -> dict:
        """Convert to dictionary for JSON serialization."""
        return {
            "source": self.source.name,
            "target": self.target.name,
            "dims": {str(d): n for d, n in self.dims().items()},
        }


def _check_pair(M: GradedModule, N: GradedModule) -> None:
    if not M.algebra.same_as(N.algebra):
        raise AlgebraMismatch(f"{M.name} and {N.name} live over different algebras")
    gm = [(name, k) for name, k, _ in M.generators()]
    gn = [(name, k) for name, k, _ in N.generators()]
    if gm != gn:
        raise AlgebraMismatch("modules carry different generator sets")


def hom_space(
    M: GradedModule, N: GradedModule, degree=None, respect_central: bool = False
) -> HomSpace:
    """
    All homogeneous R-linear maps M -> N, optionally only those of one degree.

    Unknowns are the matrix entries F[t, s] between basis vectors with equal
    words whose degrees differ by d; the constraints are G_N F = F G_M for every
    generator G (and for the shared central operators when ``respect_central``
    is set).
    """
    space = HomSpace(M, N)
    if M.weight != N.weight:
        return space
    _check_pair(M, N)
    K = M.domain
    gens = [(gm, gn) for (_, _, gm), (_, _, gn) in zip(M.generators(), N.generators())]
    if respect_central:
        if set(M.central) != set(N.central):
            raise HypothesisFailed("modules carry different central operators")
        gens.extend((M.central[v][0], N.central[v][0]) for v in sorted(M.central))
    by_degree: dict = {}
    for t, (wt, dt) in enumerate(zip(N.words, N.degrees)):
        for s, (ws, ds) in enumerate(zip(M.words, M.degrees)):
            if wt == ws:
                by_degree.setdefault(dt - ds, []).append((t, s))
    wanted = None if degree is None else half(degree)
    gen_data = [(linalg.columns_of(gn), linalg.rows_of(gm)) for gm, gn in gens]
    for d in sorted(by_degree):
        if wanted is not None and d != wanted:
            continue
        unknowns = by_degree[d]
        equations: dict = {}
        for g, (gn_cols, gm_rows) in enumerate(gen_data):
            for n, (u, s) in enumerate(unknowns):
                # (G_N F)[t, s] gets G_N[t, u] F[u, s]
                for t, c in gn_cols.get(u, {}).items():
                    row = equations.setdefault((g, t, s), {})
                    row[n] = row.get(n, K.zero) + c
            for n, (t, u) in enumerate(unknowns):
                # (F G_M)[t, s] gets F[t, u] G_M[u, s]
                for s, c in gm_rows.get(u, {}).items():
                    row = equations.setdefault((g, t, s), {})
                    row[n] = row.get(n, K.zero) - c
        solutions = linalg.solve_homogeneous(equations.values(), len(unknowns), K)
        for sol in solutions:
            dod: dict = {}
            for n, v in sol.items():
                t, s = unknowns[n]
                dod.setdefault(t, {})[s] = v
            space.maps.append((d, linalg.matrix(dod, (N.dim, M.dim), K)))
    logger.debug("HOM(%s, %s): dims %s", M.name, N.name, space.dims())
    return space


def random_combination(maps: list[DomainMatrix], rng: random.Random) -> Optional[DomainMatrix]:
    if not maps:
        return None
    K = maps[0].domain
    total = None
    for m in maps:
        c = K.convert(rng.randint(1, 97))
        total = m * c if total is None else total + m * c
    return total


def find_isomorphism(
    M: GradedModule, N: GradedModule, seed: int = 0, attempts: int = 4,
    respect_central: bool = False,
) -> Optional[DomainMatrix]:
    """A degree-0 invertible homomorphism M -> N, or None."""
    if M.dim != N.dim or M.character() != N.character():
        return None
    if M.dim == 0:
        return linalg.zeros(0, 0, M.domain)
    candidates = hom_space(M, N, degree=0, respect_central=respect_central).of_degree(0)
    rng = random.Random(seed)
    for _ in range(attempts):
        F = random_combination(candidates, rng)
        if F is not None and linalg.rank(F) == M.dim:
            return F
    return None


def is_isomorphic(M: GradedModule, N: GradedModule, seed: int = 0) -> bool:
    """Equal characters and an invertible degree-0 intertwiner."""
    return find_isomorphism(M, N, seed) is not None


def image_vectors(F: DomainMatrix) -> list[dict]:
    return [col for _, col in sorted(linalg.columns_of(F).items())]


def kernel_vectors(F: DomainMatrix, M: GradedModule) -> list[dict]:
    """Homogeneous basis of ker F for a homogeneous map out of M."""
    blocks: dict = {}
    for b, key in enumerate(zip(M.words, M.degrees)):
        blocks.setdefault(key, []).append(b)
    cols = linalg.columns_of(F)
    out = []
    for _, members in sorted(blocks.items(), key=lambda kv: kv[1][0]):
        sub = linalg.from_columns([cols.get(b, {}) for b in members], F.shape[0], F.domain)
        for vec in linalg.nullspace(sub):
            out.append({members[t]: v for t, v in vec.items()})
    return out


def compose(G: DomainMatrix, F: DomainMatrix) -> DomainMatrix:
    """G o F."""
    return G.matmul(F)


@dataclass
class Morphism:
    """A homogeneous module map given by its matrix (target x source)."""

    source: GradedModule
    target: GradedModule
    matrix: DomainMatrix
    degree: object = None

    def __post_init__(self):
        if self.degree is None:
            self.degree = map_degree(self.matrix, self.source, self.target)

    def is_zero(self) -> bool:
        return linalg.is_zero(self.matrix)

    def rank(self) -> int:
        return linalg.rank(self.matrix)

    def is_injective(self) -> bool:
        return self.rank() == self.source.dim

    def is_surjective(self) -> bool:
        return self.rank() == self.target.dim

    def then(self, other: "Morphism") -> "Morphism":
        """other o self."""
        degree = None
        if self.degree is not None and other.degree is not None:
            degree = self.degree + other.degree
        return Morphism(self.source, other.target, other.matrix.matmul(self.matrix), degree)

    def scaled(self, c) -> "Morphism":
        return Morphism(self.source, self.target, self.matrix * c, self.degree)

    def is_homomorphism(self) -> bool:
        return map_is_homomorphism(self.matrix, self.source, self.target)

    def to_dict(self) -> dict:
        """Convert to dictionary for JSON serialization."""
        return {
            "source": self.source.name,
            "target": self.target.name,
            "degree": str(self.degree),
            "rank": self.rank(),
        }


def map_degree(F: DomainMatrix, M: GradedModule, N: GradedModule):
    """The common degree shift of a homogeneous map, or None for the zero map."""
    shifts = {N.degrees[t] - M.degrees[s] for t, s, v in linalg.entries(F) if v}
    if not shifts:
        return None
    if len(shifts) > 1:
        raise HypothesisFailed(f"map {M.name} -> {N.name} is not homogeneous: {sorted(shifts)}")
    return shifts.pop()
