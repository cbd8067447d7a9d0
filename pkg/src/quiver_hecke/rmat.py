"""R-matrices between graded modules and the invariants built from them.

Universal R-matrices come from the intertwiners phi_w; for unmixed pairs the
plain tau_w already intertwines. The R-matrix r_{M,N} is the spanning map of a
one-dimensional HOM(M o N, N o M) and Lambda(M, N) its degree. Renormalized
R-matrices of truncated affinizations are read off from hom spaces that also
commute with the parameters z and w.
"""

import logging
from dataclasses import dataclass, field
from typing import Optional, Sequence

from sympy import Poly, symbols

from quiver_hecke import linalg
from quiver_hecke.catalogue import AffineModule
from quiver_hecke.characters import half
from quiver_hecke.convolution import (
    block_permutation,
    convolution,
    convolution_product,
    homogeneous_parts,
    pure_index,
    r_linear_map,
)
from quiver_hecke.errors import (
    HypothesisFailed,
    NotLambdaDefinable,
    NotScalar,
    TruncationExhausted,
)
from quiver_hecke.gmod import GradedModule, is_unmixed, quotient, regrade, shift
from quiver_hecke.homs import Morphism, hom_space
from quiver_hecke.linalg import Vec
from quiver_hecke.qha import intertwiner_w

logger = logging.getLogger(__name__)


# ----- universal and unmixed R-matrices -----


def block_map(modules: Sequence[GradedModule], order: Sequence[int], use_phi: bool = True,
              source=None, target=None) -> Morphism:
    """
    The map M_1 o ... o M_r -> M_{order[0]} o ... o M_{order[r-1]} sending
    u_1 (x) ... (x) u_r to phi_w (or tau_w) of the reordered pure tensor.
    """
    r = len(modules)
    P = source or convolution_product(list(modules))
    Q = target or convolution_product([modules[t] for t in order])
    heights = [M.height for M in modules]
    w = block_permutation(heights, order)
    alg = P.algebra
    if use_phi:
        phi = intertwiner_w(w, P.weight, alg)

        def push(vec: Vec) -> Vec:
            return Q.act_element(phi, vec)
    else:
        zero = (0,) * len(w)

        def push(vec: Vec) -> Vec:
            out: Vec = {}
            for b, c in vec.items():
                linalg.vec_add(out, Q.act_term(w, zero, b), c)
            return out

    def image(leaves):
        reordered = [leaves[t] for t in order]
        return push({pure_index(Q, reordered, r): P.domain.one})

    F = r_linear_map(P, Q, r, image)
    return Morphism(P, Q, F)


def universal_R(M: GradedModule, N: GradedModule, source=None, target=None) -> Morphism:
    """R^univ_{M,N}: u (x) v -> phi_{w[n,m]} (v (x) u)."""
    return block_map([M, N], [1, 0], True, source, target)


def unmixed_R(M: GradedModule, N: GradedModule, source=None, target=None) -> Morphism:
    """u (x) v -> tau_{w[n,m]} (v (x) u), a homomorphism when (M, N) is unmixed."""
    if not is_unmixed(M, N):
        raise HypothesisFailed(f"({M.name}, {N.name}) is not unmixed")
    return block_map([M, N], [1, 0], False, source, target)


def yang_baxter(L: GradedModule, M: GradedModule, N: GradedModule) -> bool:
    """
    (R_{M,N} o L)(M o R_{L,N})(R_{L,M} o N) == (N o R_{L,M})(R_{L,N} o M)(L o R_{M,N})
    as maps L o M o N -> N o M o L.
    """
    mods = [L, M, N]
    cache: dict = {}

    def product(order):
        key = tuple(order)
        if key not in cache:
            cache[key] = convolution_product([mods[t] for t in order])
        return cache[key]

    def step(current, swap_at):
        nxt = list(current)
        nxt[swap_at], nxt[swap_at + 1] = nxt[swap_at + 1], nxt[swap_at]
        # positions of the next arrangement's factors inside the current one
        order = [current.index(t) for t in nxt]
        P, Q = product(current), product(nxt)
        return block_map([mods[t] for t in current], order, True, P, Q).matrix, nxt

    def path(swaps):
        current = [0, 1, 2]
        total = None
        for s in swaps:
            F, current = step(current, s)
            total = F if total is None else F.matmul(total)
        return total

    return path([0, 1, 0]) == path([1, 0, 1])


# ----- R-matrices and Lambda -----


@dataclass
class RMatrix:
    """r_{M,N} with its degree Lambda(M, N)."""

    morphism: Morphism
    Lambda: object
    method: str = "hom"

    def to_dict(self) -> dict:
        """Convert to dictionary for JSON serialization."""
        return {"Lambda": str(self.Lambda), "method": self.method, **self.morphism.to_dict()}


def rmatrix(M: GradedModule, N: GradedModule, cross_check: bool = True) -> RMatrix:
    """
    The R-matrix r_{M,N}: M o N -> N o M and Lambda(M, N).

    Unmixed pairs use tau_{w[n,m]} directly; the hom-space computation confirms
    it when ``cross_check`` is set.

    Raises:
        NotLambdaDefinable: when HOM(M o N, N o M) is not one-dimensional
    """
    P = convolution(M, N)
    Q = convolution(N, M)
    if is_unmixed(M, N) and not M.is_zero() and not N.is_zero():
        r = unmixed_R(M, N, P, Q)
        if not cross_check:
            return RMatrix(r, r.degree, "unmixed")
    else:
        r = None
    H = hom_space(P, Q)
    if H.dim != 1:
        raise NotLambdaDefinable(
            f"HOM({P.name}, {Q.name}) has dimension {H.dim}", dimension=H.dim
        )
    degree, F = H.maps[0]
    if r is not None and (r.is_zero() or r.degree != degree):
        raise HypothesisFailed(f"unmixed R-matrix of {M.name}, {N.name} disagrees with HOM")
    return RMatrix(r or Morphism(P, Q, F, degree), degree, "unmixed" if r else "hom")


def Lambda(M: GradedModule, N: GradedModule):
    return rmatrix(M, N).Lambda


def lambda_tilde(M: GradedModule, N: GradedModule):
    """(Lambda(M, N) - lambda(wt M, wt N)) / 2."""
    lam = M.algebra.lam
    return half(Lambda(M, N) - lam(M.weight, N.weight)) / 2


def delta(M: GradedModule, N: GradedModule):
    """(Lambda(M, N) + Lambda(N, M)) / 2."""
    return half(Lambda(M, N) + Lambda(N, M)) / 2


def self_dual_product_shift(M: GradedModule, N: GradedModule):
    """The shift (Lambda(M, N) + (wt M, wt N)) / 2 making M o N self-dual when it is simple."""
    pair = M.algebra.datum.pair(M.weight, N.weight)
    return half(Lambda(M, N) + pair) / 2


def self_dual_product(M: GradedModule, N: GradedModule) -> GradedModule:
    out = shift(convolution(M, N), self_dual_product_shift(M, N))
    out.name = f"{M.name}o{N.name}"
    return out


def associator_defect(M: GradedModule, N: GradedModule, lam_to) -> dict:
    """
    Lambda before and after moving both modules to the grading lam_to, with the
    expected difference c(beta, gamma) = (lam_to - lam)(beta, gamma).
    """
    lam = M.algebra.lam
    before = Lambda(M, N)
    after = Lambda(regrade(M, lam_to), regrade(N, lam_to))
    expected = lam_to(M.weight, N.weight) - lam(M.weight, N.weight)
    return {"before": before, "after": after, "expected_difference": expected,
            "pass": after - before == expected}


# ----- renormalized R-matrices -----


def _image_mod(target: GradedModule, ops: Sequence, F) -> list[Vec]:
    """Columns of F reduced modulo sum_op op(target)."""
    rows = linalg.IncrementalBasis(target.domain)
    for op in ops:
        for _, col in sorted(linalg.columns_of(op).items()):
            rows.add(col)
    out = []
    for _, col in sorted(linalg.columns_of(F).items()):
        red = rows.reduce(col)
        if red:
            out.append(red)
    return out


def _power(mat, k: int):
    out = linalg.identity(mat.shape[0], mat.domain)
    for _ in range(k):
        out = out.matmul(mat)
    return out


@dataclass
class Renormalized:
    """R^ren = R^univ / f with f(0) != 0 after removing it; ``order`` is the order of f."""

    morphism: Morphism
    order: int
    prefactor: dict = field(default_factory=dict)
    fiber: Optional[Morphism] = None

    def to_dict(self) -> dict:
        """Convert to dictionary for JSON serialization."""
        return {
            "order": self.order,
            "degree": str(self.morphism.degree),
            "prefactor": {f"{a},{b}": str(c) for (a, b), c in sorted(self.prefactor.items())},
        }


def renormalized_R(M, N) -> Renormalized:
    """
    R^ren for an affinization against a finite module (on either side) or
    another affinization.

    Raises:
        TruncationExhausted: when R^univ vanishes on the truncation or its order
            reaches the truncation depth
        NotLambdaDefinable: when the lowest nonvanishing hom is not unique
    """
    if isinstance(M, AffineModule) and isinstance(N, AffineModule):
        return _renormalized_pair(M, N)
    if isinstance(M, AffineModule):
        return _renormalized_one(M.module, N, M)
    if isinstance(N, AffineModule):
        return _renormalized_one(M, N.module, N)
    raise HypothesisFailed("renormalization needs at least one affinization")


def _renormalized_one(X: GradedModule, Y: GradedModule, aff: AffineModule) -> Renormalized:
    P = convolution(X, Y)
    Q = convolution(Y, X)
    R = universal_R(X, Y, P, Q)
    if R.is_zero():
        raise TruncationExhausted(f"R^univ({X.name}, {Y.name}) vanishes at depth {aff.trunc}")
    zQ = Q.central[aff.var][0]
    s = 0
    while s + 1 < aff.trunc and not _image_mod(Q, [_power(zQ, s + 1)], R.matrix):
        s += 1
    if s + 1 >= aff.trunc:
        raise TruncationExhausted(
            f"order of zero of R^univ({X.name}, {Y.name}) reaches depth {aff.trunc}"
        )
    zs = _power(zQ, s)
    K = P.domain
    cols = []
    for b in range(P.dim):
        target = linalg.apply(R.matrix, {b: K.one})
        y = linalg.solve(zs, target) if target else {}
        if y is None:
            raise HypothesisFailed("image is not divisible by z^s")
        cols.append(y)
    ren = linalg.from_columns(cols, Q.dim, K)
    # y is only defined modulo ker z^s; the fiber map is well defined
    fiber = _fiber_map(P, Q, ren, [aff.var])
    logger.debug("R^ren(%s, %s): order %d", X.name, Y.name, s)
    degree = None if R.degree is None else R.degree - s * aff.z_degree
    return Renormalized(Morphism(P, Q, ren, degree), s, {(s, 0): K.one}, fiber)


def _fiber_map(P: GradedModule, Q: GradedModule, F, variables: Sequence[str]) -> Morphism:
    """F modulo the parameters: P/(z, w)P -> Q/(z, w)Q."""

    def fiber(M):
        ops = [M.central[v][0] for v in variables]
        image = [col for op in ops for _, col in sorted(linalg.columns_of(op).items())]
        out = quotient(M, homogeneous_parts(M, image), f"{M.name}|0")
        out.central = {}
        return out

    P0, Q0 = fiber(P), fiber(Q)
    cols = [Q0.projection(linalg.apply(F, {b: P.domain.one})) for b in P0.section]
    return Morphism(P0, Q0, linalg.from_columns(cols, Q0.dim, P.domain))


def _renormalized_pair(Mh: AffineModule, Nh: AffineModule) -> Renormalized:
    if Mh.var == Nh.var:
        raise HypothesisFailed("affinizations need distinct parameter names")
    X, Y = Mh.module, Nh.module
    P = convolution(X, Y)
    Q = convolution(Y, X)
    H = hom_space(P, Q, respect_central=True)
    zQ, wQ = Q.central[Mh.var][0], Q.central[Nh.var][0]
    chosen = None
    for d in H.degrees():
        maps = H.of_degree(d)
        live = [F for F in maps if _image_mod(Q, [zQ, wQ], F)]
        if not live:
            continue
        reductions = linalg.IncrementalBasis(P.domain)
        for F in live:
            reductions.add(_flatten_mod(Q, [zQ, wQ], F))
        if len(reductions) > 1:
            raise NotLambdaDefinable(
                f"{len(reductions)} independent nonvanishing maps in degree {d}",
                dimension=len(reductions),
            )
        chosen = (d, live[0])
        break
    if chosen is None:
        raise TruncationExhausted(f"no nonvanishing homomorphism {P.name} -> {Q.name}")
    d, F = chosen
    F = _normalize(F)
    R = universal_R(X, Y, P, Q)
    prefactor = _solve_prefactor(Q, [zQ, wQ], F, R.matrix, Mh.trunc, Nh.trunc)
    if prefactor is None:
        raise TruncationExhausted("R^univ is not a polynomial multiple of the chosen map")
    if not prefactor:
        raise TruncationExhausted(f"R^univ({X.name}, {Y.name}) vanishes on the truncation")
    order = min(a + b for a, b in prefactor)
    fiber = _fiber_map(P, Q, F, [Mh.var, Nh.var])
    return Renormalized(Morphism(P, Q, F, d), order, prefactor, fiber)


def _flatten_mod(Q: GradedModule, ops, F) -> Vec:
    n = F.shape[1]
    out: Vec = {}
    rows = linalg.IncrementalBasis(Q.domain)
    for op in ops:
        for _, col in sorted(linalg.columns_of(op).items()):
            rows.add(col)
    for j, col in linalg.columns_of(F).items():
        for i, v in rows.reduce(col).items():
            out[i * n + j] = v
    return out


def _normalize(F):
    """Scale so that the first nonzero entry (row-major) is 1."""
    first = min(linalg.entries(F), key=lambda e: (e[0], e[1]), default=None)
    if first is None:
        return F
    return F * F.domain.quo(F.domain.one, first[2])


def _solve_prefactor(Q, ops, F, target, depth_z: int, depth_w: int) -> Optional[dict]:
    """Coefficients c_ab with target = sum c_ab z^a w^b F, or None."""
    z, w = ops
    K = Q.domain
    monomials = [(a, b) for a in range(depth_z) for b in range(depth_w)]
    columns = []
    for a, b in monomials:
        op = _power(z, a).matmul(_power(w, b)).matmul(F)
        columns.append(_flatten(op))
    rhs = _flatten(target)
    size = Q.dim * F.shape[1]
    A = linalg.from_columns(columns, size, K)
    sol = linalg.solve(A, rhs)
    if sol is None:
        return None
    return {monomials[t]: c for t, c in sol.items() if c}


def _flatten(m) -> Vec:
    n = m.shape[1]
    return {i * n + j: v for i, j, v in linalg.entries(m)}


# ----- Delta -----


Z, W = symbols("z w")


@dataclass
class DeltaResult:
    poly: Poly
    raw: dict
    trunc: tuple[int, int]

    def to_dict(self) -> dict:
        """Convert to dictionary for JSON serialization."""
        return {"Delta_poly": str(self.poly.as_expr()), "trunc": max(self.trunc)}


def Delta(Mh: AffineModule, Nh: AffineModule) -> DeltaResult:
    """
    The scalar R^ren_{N,M} o R^ren_{M,N} = Delta(z, w) id, normalized so that its
    first coefficient (by total degree, then z-degree) is 1.

    Raises:
        NotScalar: when the composition is not a polynomial in z and w
    """
    forward = renormalized_R(Mh, Nh).morphism
    backward = renormalized_R(Nh, Mh).morphism
    P = forward.source
    comp = backward.matrix.matmul(forward.matrix)
    z, w = P.central[Mh.var][0], P.central[Nh.var][0]
    coeffs = _solve_prefactor(P, [z, w], linalg.identity(P.dim, P.domain), comp, Mh.trunc,
                              Nh.trunc)
    if coeffs is None:
        raise NotScalar(f"R^ren({Nh.name}, {Mh.name}) o R^ren({Mh.name}, {Nh.name}) "
                        "is not a scalar")
    return DeltaResult(_delta_poly(coeffs, P.domain), coeffs, (Mh.trunc, Nh.trunc))


def _delta_poly(coeffs: dict, K) -> Poly:
    if not coeffs:
        return Poly(0, Z, W)
    lead = min(coeffs, key=lambda ab: (ab[0] + ab[1], -ab[0]))
    scale = K.quo(K.one, coeffs[lead])
    expr = sum(K.to_sympy(c * scale) * Z**a * W**b for (a, b), c in coeffs.items())
    return Poly(expr, Z, W)


def stable_part(result: DeltaResult, bound: int) -> Poly:
    """Terms z^a w^b with a, b < bound."""
    terms = {m: c for m, c in result.poly.terms() if m[0] < bound and m[1] < bound}
    if not terms:
        return Poly(0, Z, W)
    return Poly.from_dict(terms, Z, W)


def Delta_stable(make_M, make_N, depths: Sequence[int] = (4, 5)) -> dict:
    """
    Compute Delta at two truncation depths and compare the terms both can see.

    ``make_M(N)`` and ``make_N(N)`` build the affinizations at depth N.
    """
    results = [Delta(make_M(d), make_N(d)) for d in depths]
    bound = min(depths) - 1
    parts = [stable_part(r, bound) for r in results]
    agree = all(p == parts[0] for p in parts[1:])
    if not agree:
        logger.warning("Delta differs between truncations %s", list(depths))
    return {"poly": parts[0], "agree": agree, "results": results}


def rational_iso_certificate(F: Morphism, G: Morphism, var: str = "z",
                             max_power: Optional[int] = None) -> Optional[int]:
    """The n with G o F = z^n id on the truncation, or None."""
    comp = G.matrix.matmul(F.matrix)
    z = F.source.central[var][0]
    limit = max_power if max_power is not None else F.source.dim
    power = linalg.identity(F.source.dim, F.source.domain)
    for n in range(limit + 1):
        if comp == power:
            return n
        power = power.matmul(z)
        if linalg.is_zero(power):
            break
    return None

