"""Convolution (induction) products of graded modules.

M o N = R(beta+gamma) e(beta, gamma) (x)_{R(beta) (x) R(gamma)} (M (x) N) is free over
M (x) N with basis tau_sigma (x) f, sigma running over minimal coset
representatives. A generator g acts on tau_sigma (x) f by putting g tau_sigma e(rho)
in normal form and pushing every term tau_w x^a e(rho) through the parabolic
factorization w = sigma' (p1 x p2) into the factor space.
"""

import logging
from typing import Optional, Sequence

from sympy.polys.matrices import DomainMatrix

from quiver_hecke import linalg, perms
from quiver_hecke.errors import AlgebraMismatch, HypothesisFailed
from quiver_hecke.gmod import GradedModule, quotient
from quiver_hecke.linalg import Vec
from quiver_hecke.qha import KLRAlgebra, Terms, _add

logger = logging.getLogger(__name__)


class KroneckerFactor:
    """The R(beta) (x) R(gamma)-module M (x) N."""

    def __init__(self, left: GradedModule, right: GradedModule):
        self.left = left
        self.right = right
        self.m = left.height
        self.n = right.height
        self.words = [wl + wr for wl in left.words for wr in right.words]
        self.degrees = [dl + dr for dl in left.degrees for dr in right.degrees]

    def split(self, f: int) -> tuple[int, int]:
        return divmod(f, self.right.dim)

    def index(self, i: int, j: int) -> int:
        return i * self.right.dim + j

    def apply(self, p1, a1, p2, a2, f: int) -> Vec:
        i, j = self.split(f)
        vl = self.left.act_term(p1, a1, i)
        if not vl:
            return {}
        vr = self.right.act_term(p2, a2, j)
        out: Vec = {}
        for i2, c1 in vl.items():
            for j2, c2 in vr.items():
                out[self.index(i2, j2)] = c1 * c2
        return out

    def left_operator(self, mat: DomainMatrix, f: int) -> Vec:
        i, j = self.split(f)
        return {self.index(i2, j): c for i2, c in linalg.apply(mat, {i: mat.domain.one}).items()}

    def right_operator(self, mat: DomainMatrix, f: int) -> Vec:
        i, j = self.split(f)
        return {self.index(i, j2): c for j2, c in linalg.apply(mat, {j: mat.domain.one}).items()}


class ConvolutionModule(GradedModule):
    """A convolution product remembering its shuffle basis tau_sigma (x) f."""

    def __init__(self, factor: KroneckerFactor, shuffle_list, *args, **kwargs):
        super().__init__(*args, **kwargs)
        self.factor = factor
        self.shuffle_list = list(shuffle_list)
        self._pos = {s: t for t, s in enumerate(self.shuffle_list)}

    def index(self, sigma: perms.Perm, f: int) -> int:
        return self._pos[tuple(sigma)] * len(self.factor.words) + f

    def pure(self, f: int) -> int:
        """Basis index of 1 (x) f."""
        return self.index(perms.identity(self.height), f)

    def pure_pair(self, i: int, j: int) -> int:
        """Basis index of 1 (x) (u_i (x) v_j)."""
        return self.pure(self.factor.index(i, j))


def _resolve(alg: KLRAlgebra, factor: KroneckerFactor, terms: Terms, f: int, index) -> Vec:
    """Push normal-form terms acting on 1 (x) f into the convolution basis."""
    m = factor.m
    work: Terms = dict(terms)
    out: Vec = {}
    while work:
        key = max(work, key=lambda k: perms.length(k[0]))
        c = work.pop(key)
        if not c:
            continue
        w, a, rho = key
        sigma, p1, p2 = perms.parabolic_factor(w, m)
        for f2, v in factor.apply(p1, a[:m], p2, a[m:], f).items():
            linalg.vec_add(out, {index(sigma, f2): v}, c)
        word = perms.lexmin_word(sigma) + perms.lexmin_word(p1) + perms.shift_word(
            perms.lexmin_word(p2), m
        )
        if word == perms.lexmin_word(w):
            continue
        # tau_w differs from tau_sigma tau_{p1 x p2} by shorter braid corrections
        for k2, c2 in alg.word_nf(word, a, rho).items():
            if k2 != key:
                _add(work, {k2: -c2 * c})
    return out


def convolve(alg: KLRAlgebra, factor: KroneckerFactor, weight, name: str) -> ConvolutionModule:
    """Build the induced module on the factor space."""
    m, n = factor.m, factor.n
    total = m + n
    K = alg.domain
    shuffle_list = list(perms.shuffles(m, n))
    F = len(factor.words)
    words: list = []
    degrees: list = []
    for sigma in shuffle_list:
        for f in range(F):
            rho = factor.words[f]
            words.append(perms.act(sigma, rho))
            degrees.append(factor.degrees[f] + alg.tau_degree(sigma, rho))
    pos = {s: t for t, s in enumerate(shuffle_list)}

    def index(sigma, f):
        return pos[tuple(sigma)] * F + f

    dim = len(words)
    logger.debug("convolution %s: %d shuffles x %d factor vectors", name, len(shuffle_list), F)
    alg._reset_fuel()
    zero_a = (0,) * total

    def action(step) -> DomainMatrix:
        cols = []
        for sigma in shuffle_list:
            for f in range(F):
                terms = step((tuple(sigma), zero_a, tuple(factor.words[f])))
                cols.append(_resolve(alg, factor, terms, f, index))
        return linalg.from_columns(cols, dim, K)

    def operator(apply_one) -> DomainMatrix:
        cols = []
        for sigma in shuffle_list:
            for f in range(F):
                cols.append({index(sigma, f2): c for f2, c in apply_one(f).items()})
        return linalg.from_columns(cols, dim, K)

    x = [action(lambda key, k=k: alg.x_left(k, key)) for k in range(total)]
    tau = [action(lambda key, l=l: alg.tau_left(l, key)) for l in range(total - 1)]
    central = {}
    for var, (mat, deg) in factor.left.central.items():
        central[var] = (operator(lambda f, mat=mat: factor.left_operator(mat, f)), deg)
    for var, (mat, deg) in factor.right.central.items():
        label = var if var not in central else f"{var}'"
        central[label] = (operator(lambda f, mat=mat: factor.right_operator(mat, f)), deg)
    return ConvolutionModule(factor, shuffle_list, alg, weight, words, degrees, x, tau, name,
                             central)


def convolution(M: GradedModule, N: GradedModule) -> ConvolutionModule:
    """M o N."""
    if not M.algebra.same_as(N.algebra):
        raise AlgebraMismatch(f"{M.name} and {N.name} live over different algebras")
    factor = KroneckerFactor(M, N)
    return convolve(M.algebra, factor, M.weight + N.weight, f"{M.name}o{N.name}")


def balanced_convolution(X: GradedModule, Y: GradedModule, zx: str = "z", zy: str = "z"):
    """
    X o_z Y: the cokernel of z (x) 1 - 1 (x) z on X o Y.

    The parameter of X is kept as the central operator of the result.
    """
    if zx not in X.central or zy not in Y.central:
        raise HypothesisFailed("both factors need the balancing parameter")
    if X.central[zx][1] != Y.central[zy][1]:
        raise HypothesisFailed("balancing parameters have different degrees")
    C = convolution(X, Y)
    left = C.central[zx][0]
    right = C.central[zy if zy != zx else f"{zy}'"][0]
    diff = left - right
    image = [col for _, col in sorted(linalg.columns_of(diff).items())]
    Q = quotient(C, homogeneous_parts(C, image), f"{X.name}o_z{Y.name}")
    Q.central = {zx: Q.central[zx]}
    Q.ambient = C
    return Q


def homogeneous_parts(M: GradedModule, vectors) -> list[Vec]:
    out = []
    for vec in vectors:
        blocks: dict = {}
        for i, v in vec.items():
            blocks.setdefault((M.words[i], M.degrees[i]), {})[i] = v
        out.extend(blocks.values())
    return out


def convolution_product(modules: Sequence[GradedModule]) -> GradedModule:
    """Left-nested product ((M1 o M2) o M3) ..."""
    if not modules:
        raise ValueError("empty product")
    result = modules[0]
    for M in modules[1:]:
        result = convolution(result, M)
    return result


def convolution_power(M: GradedModule, n: int) -> GradedModule:
    if n < 1:
        raise ValueError("power must be at least 1")
    return convolution_product([M] * n)


# ----- maps between convolution products -----


def decompose(P: GradedModule, b: int, parts: int) -> tuple[list, tuple]:
    """
    Write basis vector b of a left-nested product of ``parts`` factors as
    tau_{p_1} ... tau_{p_r} applied to a pure tensor of factor basis vectors.

    Returns the permutations outermost first, and the factor indices.
    """
    if parts == 1:
        return [], (b,)
    F = len(P.factor.words)
    t, f = divmod(b, F)
    sigma = P.shuffle_list[t]
    i, j = P.factor.split(f)
    inner, leaves = decompose(P.factor.left, i, parts - 1)
    n = P.factor.n
    padded = [perms.direct_sum(p, perms.identity(n)) for p in inner]
    return [sigma] + padded, leaves + (j,)


def pure_index(P: GradedModule, leaves: Sequence[int], parts: int) -> int:
    """Basis index of 1 (x) u_1 (x) ... (x) u_r in a left-nested product."""
    if parts == 1:
        return leaves[0]
    left = pure_index(P.factor.left, leaves[:-1], parts - 1)
    return P.pure(P.factor.index(left, leaves[-1]))


def r_linear_map(P: GradedModule, Q: GradedModule, parts: int, image_of_pure) -> DomainMatrix:
    """
    The R-linear map P -> Q fixed by its values on pure tensors.

    ``image_of_pure(leaves)`` returns a vector of Q.
    """
    K = P.domain
    cache: dict = {}
    cols = []
    for b in range(P.dim):
        path, leaves = decompose(P, b, parts)
        vec = cache.get(leaves)
        if vec is None:
            vec = cache[leaves] = image_of_pure(leaves)
        for p in reversed(path):
            if not vec:
                break
            zero = (0,) * len(p)
            out: Vec = {}
            for c, v in vec.items():
                linalg.vec_add(out, Q.act_term(p, zero, c), v)
            vec = out
        cols.append(vec)
    return linalg.from_columns(cols, Q.dim, K)


def block_permutation(heights: Sequence[int], order: Sequence[int]) -> perms.Perm:
    """
    The w moving blocks from ``order`` (target arrangement) back to the source one:
    position s of the t-th target block goes to position s of source block order[t].
    """
    offsets = [sum(heights[:k]) for k in range(len(heights))]
    w: list[int] = []
    for t in order:
        w.extend(offsets[t] + s for s in range(heights[t]))
    return tuple(w)


def tensor_maps(P: ConvolutionModule, Q: ConvolutionModule, F: DomainMatrix,
                G: DomainMatrix) -> DomainMatrix:
    """F o G : A o B -> A' o B' for maps F: A -> A' and G: B -> B'."""
    K = P.domain
    F_cols = linalg.columns_of(F)
    G_cols = linalg.columns_of(G)
    cols = []
    for sigma in P.shuffle_list:
        for f in range(len(P.factor.words)):
            i, j = P.factor.split(f)
            col: Vec = {}
            for i2, a in F_cols.get(i, {}).items():
                for j2, c in G_cols.get(j, {}).items():
                    linalg.vec_add(col, {Q.index(sigma, Q.factor.index(i2, j2)): a * c})
            cols.append(col)
    return linalg.from_columns(cols, Q.dim, K)


def adjacent_map(modules: Sequence[GradedModule], t: int, G: DomainMatrix,
                 middle: ConvolutionModule, P: Optional[GradedModule] = None,
                 Q: Optional[GradedModule] = None) -> DomainMatrix:
    """
    id o G o id on M_1 o ... o M_r, where G maps M_t o M_{t+1} to the
    two-factor product ``middle`` = A o B.

    The target is M_1 o ... o A o B o ... o M_r, all products left-nested.
    """
    modules = list(modules)
    r = len(modules)
    replaced = modules[:t] + [middle.factor.left, middle.factor.right] + modules[t + 2:]
    P = P or convolution_product(modules)
    Q = Q or convolution_product(replaced)
    before = sum(M.height for M in modules[:t])
    after = sum(M.height for M in modules[t + 2:])
    G_cols = linalg.columns_of(G)
    K = P.domain

    def image(leaves):
        # the identity shuffle comes first, so 1 (x) (u (x) v) has index u * dim + v
        col = G_cols.get(leaves[t] * modules[t + 1].dim + leaves[t + 1], {})
        out: Vec = {}
        for c, v in col.items():
            path, (a, b) = decompose(middle, c, 2)
            vec = {pure_index(Q, leaves[:t] + (a, b) + leaves[t + 2:], r): K.one}
            for p in reversed(path):
                padded = perms.direct_sum(perms.direct_sum(perms.identity(before), p),
                                          perms.identity(after))
                zero = (0,) * len(padded)
                nxt: Vec = {}
                for e, u in vec.items():
                    linalg.vec_add(nxt, Q.act_term(padded, zero, e), u)
                vec = nxt
            linalg.vec_add(out, vec, v)
        return out

    return r_linear_map(P, Q, r, image)
