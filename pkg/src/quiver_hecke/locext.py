"""Braiders over the extended algebras and truncated localization hom spaces.

The localization by a braider C is never built as a category. An object is a
pair (X, m) standing for X o C^{o m}, and a hom space between two objects is the
ordinary degree-0 hom space

    HOM(C^{l+m} o X, q^{H(l, n-m) - (l+n) phi(mu)} Y o C^{l+n})

at a level l, recomputed at 2l until its dimension settles.
"""

import logging
import random
from dataclasses import dataclass, field
from typing import Optional

from quiver_hecke import linalg, perms
from quiver_hecke.cartan import RootVector
from quiver_hecke.catalogue import DEFAULT_TRUNC, L_i_z, kato_module
from quiver_hecke.characters import half
from quiver_hecke.convolution import (
    adjacent_map,
    convolution,
    convolution_power,
    convolution_product,
    decompose,
    pure_index,
    r_linear_map,
)
from quiver_hecke.errors import (
    HypothesisFailed,
    NotRealizable,
    NotStabilized,
    TruncationExhausted,
    WeightMismatch,
)
from quiver_hecke.gmod import E_i, E_i_star, GradedModule, eps_i, eps_i_star, is_unmixed, shift
from quiver_hecke.homs import HomSpace, Morphism, hom_space, random_combination
from quiver_hecke.rmat import lambda_tilde, renormalized_R, rmatrix, unmixed_R

logger = logging.getLogger(__name__)

LEFT = "left"
RIGHT = "right"
DEFAULT_LEVEL_START = 2
DEFAULT_LEVEL_CAP = 8


# ----- braiders -----


@dataclass
class Braider:
    """
    A braider (C, R_C, phi).

    On the left side R_C(M): C o M -> M o C, on the right side M o C -> C o M.
    ``letters`` holds R_C(<j>) for every label j and ``phi[j]`` = phi(-alpha_j).
    """

    C: GradedModule
    side: str
    phi: dict = field(default_factory=dict)
    letters: dict = field(default_factory=dict)

    def phi_of(self, beta: RootVector):
        """phi(-beta)."""
        datum = self.C.algebra.datum
        total = half(0)
        for label, coeff in zip(datum.index_set, beta.coeffs):
            if coeff:
                total += coeff * self.phi[label]
        return total

    def pair(self, M: GradedModule) -> tuple[GradedModule, GradedModule]:
        return (self.C, M) if self.side == LEFT else (M, self.C)

    def on(self, M: GradedModule) -> Morphism:
        """R_C(M) for a one-letter module or a module with a one-dimensional R-matrix space."""
        if M.height == 1 and M.dim == 1 and M.degrees[0] == 0 and M.words[0][0] in self.letters:
            return self.letters[M.words[0][0]]
        X, Y = self.pair(M)
        if is_unmixed(X, Y):
            return unmixed_R(X, Y)
        return rmatrix(X, Y, cross_check=False).morphism

    def is_nondegenerate(self) -> bool:
        return all(not F.is_zero() for F in self.letters.values())

    def to_dict(self) -> dict:
        """Convert to dictionary for JSON serialization."""
        return {
            "C": self.C.name,
            "side": self.side,
            "phi": {j: str(v) for j, v in sorted(self.phi.items())},
            "nondegenerate": self.is_nondegenerate(),
        }


def nondeg_braider(C: GradedModule, side: str = LEFT, trunc: int = DEFAULT_TRUNC) -> Braider:
    """
    The braider of C read off from renormalized R-matrices with <j>_z at z = 0.

    Raises:
        NotRealizable: when a renormalized R-matrix is out of reach at this truncation
    """
    if side not in (LEFT, RIGHT):
        raise ValueError(f"side must be {LEFT!r} or {RIGHT!r}")
    alg = C.algebra
    braider = Braider(C, side)
    for j in alg.datum.index_set:
        L = L_i_z(alg, j, trunc)
        try:
            ren = renormalized_R(C, L) if side == LEFT else renormalized_R(L, C)
        except TruncationExhausted as e:
            raise NotRealizable(f"R^ren between {C.name} and <{j}>_z is not available") from e
        letter = kato_module(alg, (j,))
        X, Y = braider.pair(letter)
        # the z = 0 fibers keep the shuffle order of the finite products
        F = Morphism(convolution(X, Y), convolution(Y, X), ren.fiber.matrix)
        if not F.is_homomorphism():
            raise HypothesisFailed(f"fiber of R^ren at <{j}> is not a homomorphism")
        braider.letters[j] = F
        braider.phi[j] = F.degree if F.degree is not None else half(0)
        logger.debug("braider %s: R(<%s>) degree %s, rank %d", C.name, j, F.degree, F.rank())
    return braider


def braider_hexagon(B: Braider, X: GradedModule, Y: GradedModule) -> dict:
    """
    Compare R_C(X o Y) with the composite of R_C(X) and R_C(Y).

    Left side: (X o R_C(Y))(R_C(X) o Y) on C o X o Y -> X o Y o C.
    Right side: (R_C(X) o Y)(X o R_C(Y)) on X o Y o C -> C o X o Y.
    """
    C = B.C
    K = C.domain
    RX, RY, RXY = B.on(X), B.on(Y), B.on(convolution(X, Y))
    if B.side == LEFT:
        first = adjacent_map([C, X, Y], 0, RX.matrix, RX.target)
        second = adjacent_map([X, C, Y], 1, RY.matrix, RY.target)
        source = convolution_product([C, X, Y])
        XY = RXY.source.factor.right
        # (C o X) o Y -> C o (X o Y) is the identity on pure tensors
        reassoc = r_linear_map(
            source, RXY.source, 3,
            lambda leaves: {RXY.source.pure_pair(leaves[0], XY.pure_pair(leaves[1], leaves[2])):
                            K.one},
        )
        direct = RXY.matrix.matmul(reassoc)
    else:
        first = adjacent_map([X, Y, C], 1, RY.matrix, RY.target)
        second = adjacent_map([X, C, Y], 0, RX.matrix, RX.target)
        target = convolution_product([C, X, Y])
        XY = RXY.target.factor.right
        reassoc = r_linear_map(
            RXY.target, target, 2, lambda leaves: _nested_pure(target, XY, C.height, leaves)
        )
        direct = reassoc.matmul(RXY.matrix)
    composite = second.matmul(first)
    scalar = None if linalg.is_zero(direct) else linalg.proportionality(composite, direct)
    return {
        "X": X.name,
        "Y": Y.name,
        "degree_composite": str(half(RX.degree or 0) + half(RY.degree or 0)),
        "degree_direct": str(RXY.degree),
        "scalar": None if scalar is None else str(scalar),
        "pass": scalar is not None and bool(scalar),
    }


def _nested_pure(target: GradedModule, XY: GradedModule, h: int, leaves) -> dict:
    """The pure tensor c (x) b of C o (X o Y) as a vector of (C o X) o Y."""
    c, b = leaves
    path, (x, y) = decompose(XY, b, 2)
    vec = {pure_index(target, (c, x, y), 3): target.domain.one}
    for p in reversed(path):
        padded = perms.direct_sum(perms.identity(h), p)
        zero = (0,) * len(padded)
        nxt: dict = {}
        for e, u in vec.items():
            linalg.vec_add(nxt, target.act_term(padded, zero, e), u)
        vec = nxt
    return vec


def self_braiding(C: GradedModule) -> dict:
    """R_C(C) should be the identity of C o C."""
    r = rmatrix(C, C, cross_check=False)
    scalar = linalg.is_scalar_identity(r.morphism.matrix)
    return {"Lambda": str(r.Lambda), "scalar": None if scalar is None else str(scalar),
            "pass": scalar is not None and bool(scalar) and r.Lambda == 0}


# ----- localized objects -----


@dataclass
class LocalObject:
    """(X, m), standing for X o C^{o m}."""

    module: GradedModule
    m: int = 0

    def weight(self, C: GradedModule) -> RootVector:
        """The beta with -beta = wt(X) + m wt(C)."""
        return self.module.weight + C.weight.scale(self.m)

    def to_dict(self) -> dict:
        """Convert to dictionary for JSON serialization."""
        return {"module": self.module.name, "m": self.m}


def H(C: GradedModule, m: int, n: int):
    """H(m, n) = -mn (wt C, wt C) / 2."""
    pair = C.algebra.datum.pair(C.weight, C.weight)
    return -half(m * n * pair) / 2


def H_from_lambda(C: GradedModule, m: int, n: int):
    """-Lambda-tilde(C^m, C^n), the value H(m, n) is defined by."""
    if m == 0 or n == 0:
        return half(0)
    return -lambda_tilde(convolution_power(C, m), convolution_power(C, n))


def loc_tensor(B: Braider, X: LocalObject, Y: LocalObject) -> LocalObject:
    """(X, m) o (Y, n) = (q^{H(m, n) + n phi(lambda)} X o Y, m + n)."""
    twist = H(B.C, X.m, Y.m) + Y.m * B.phi_of(X.module.weight)
    return LocalObject(shift(convolution(X.module, Y.module), twist), X.m + Y.m)


def _with_power(C: GradedModule, X: GradedModule, k: int, left: bool) -> GradedModule:
    if k == 0:
        return X
    Ck = convolution_power(C, k)
    if X.height == 0:
        return shift(Ck, X.degrees[0]) if X.dim == 1 else X
    return convolution(Ck, X) if left else convolution(X, Ck)


def loc_hom(B: Braider, X: LocalObject, Y: LocalObject, level: int) -> HomSpace:
    """
    Degree-0 maps C^{l+m} o X -> q^{H(l, n-m) - (l+n) phi(mu)} Y o C^{l+n}.

    Raises:
        WeightMismatch: when lambda + m wt(C) != mu + n wt(C)
    """
    C = B.C
    if X.weight(C) != Y.weight(C):
        raise WeightMismatch("localized objects have different weights")
    a, b = level + X.m, level + Y.m
    if a < 0 or b < 0:
        raise ValueError(f"level {level} too low for ({X.m}, {Y.m})")
    twist = H(C, level, Y.m - X.m) - b * B.phi_of(Y.module.weight)
    source = _with_power(C, X.module, a, left=True)
    target = shift(_with_power(C, Y.module, b, left=False), twist)
    return hom_space(source, target, degree=0)


@dataclass
class StableHom:
    level: int
    dims: list[int]
    space: HomSpace

    @property
    def dim(self) -> int:
        return self.space.dim

    def to_dict(self) -> dict:
        """Convert to dictionary for JSON serialization."""
        return {"level": self.level, "dims": self.dims, "dim": self.dim}


def level_schedule(start: int = DEFAULT_LEVEL_START, cap: int = DEFAULT_LEVEL_CAP) -> list[int]:
    """start, 2 start, 4 start, ... up to cap."""
    if start < 1 or cap < start:
        raise ValueError(f"need 1 <= start <= cap, got start={start}, cap={cap}")
    levels = [start]
    while levels[-1] * 2 <= cap:
        levels.append(levels[-1] * 2)
    return levels


def loc_hom_stable(
    B: Braider, X: LocalObject, Y: LocalObject,
    start: int = DEFAULT_LEVEL_START, cap: int = DEFAULT_LEVEL_CAP,
) -> StableHom:
    """
    loc_hom at the levels of ``level_schedule`` until two consecutive dimensions agree.

    Raises:
        NotStabilized: when no agreement is seen up to the cap
    """
    levels = level_schedule(start, cap)
    dims: list[int] = []
    previous = loc_hom(B, X, Y, levels[0])
    dims.append(previous.dim)
    for before, level in zip(levels, levels[1:]):
        current = loc_hom(B, X, Y, level)
        dims.append(current.dim)
        if current.dim == previous.dim:
            return StableHom(before, dims, previous)
        previous = current
    raise NotStabilized(
        f"Hom({X.module.name}, {Y.module.name}) did not settle by level {levels[-1]}",
        dims=tuple(dims),
    )


def vanishes_in_localization(B: Braider, X: GradedModule, start: int = DEFAULT_LEVEL_START,
                             cap: int = DEFAULT_LEVEL_CAP) -> dict:
    """Q(X) = 0 shows up as an endomorphism space of (X, 0) that dies at some level."""
    obj = LocalObject(X, 0)
    dims = []
    for level in level_schedule(start, cap):
        dims.append(loc_hom(B, obj, obj, level).dim)
        if dims[-1] == 0:
            break
    return {"module": X.name, "dims": dims, "vanishes": 0 in dims}


# ----- duals -----


@dataclass
class DualWitness:
    K: GradedModule
    L: GradedModule
    morphism: Optional[Morphism]
    power: GradedModule

    @property
    def rank(self) -> int:
        return 0 if self.morphism is None else self.morphism.rank()

    @property
    def surjective(self) -> bool:
        return self.morphism is not None and self.morphism.is_surjective()

    def to_dict(self) -> dict:
        """Convert to dictionary for JSON serialization."""
        return {
            "dim_K": self.K.dim,
            "dim_L": self.L.dim,
            "dim_C_power": self.power.dim,
            "rank": self.rank,
            "degree": None if self.morphism is None else str(self.morphism.degree),
            "surjective": self.surjective,
        }


def _truncated_letter(alg, i: str, ell: int) -> GradedModule:
    if ell == 1:
        return kato_module(alg, (i,))
    M = L_i_z(alg, i, ell).module
    M.central = {}
    return M


def dual_witness(C: GradedModule, i: str, ell: int, side: str = LEFT, seed: int = 0) -> DualWitness:
    """
    An epimorphism L_ell(i) o E_i(C^ell) -> C^ell (left) or E*_i(C^ell) o L_ell(i) -> C^ell
    (right), with L_ell(i) = <i>_z / z^ell.

    Raises:
        HypothesisFailed: when eps_i(C) (resp. eps*_i(C)) is not 1
    """
    if ell < 1:
        raise ValueError("ell must be at least 1")
    eps = eps_i(C, i) if side == LEFT else eps_i_star(C, i)
    if eps != 1:
        raise HypothesisFailed(f"eps_{i}({C.name}) = {eps}, expected 1")
    alg = C.algebra
    power = convolution_power(C, ell)
    K = E_i(power, i) if side == LEFT else E_i_star(power, i)
    L = _truncated_letter(alg, i, ell)
    source = convolution(L, K) if side == LEFT else convolution(K, L)
    space = hom_space(source, power)
    rng = random.Random(seed)
    best = None
    for d in space.degrees():
        F = random_combination(space.of_degree(d), rng)
        candidate = Morphism(source, power, F, d)
        if best is None or candidate.rank() > best.rank():
            best = candidate
        if candidate.is_surjective():
            break
    return DualWitness(K, L, best, power)
