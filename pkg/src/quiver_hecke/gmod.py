"""Finite graded modules over quiver Hecke algebras.

A module is stored on a basis of weight vectors: every basis vector lies in a
single idempotent slice e(nu)M and has a single degree. Generators act by sparse
DomainMatrix objects over the base field. Truncated affinizations carry extra
commuting nilpotent operators (z, w, ...) in ``central``.
"""

import logging
from typing import Callable, Iterable, Optional, Sequence

from sympy import sympify
from sympy.polys.matrices import DomainMatrix

from quiver_hecke import linalg, perms
from quiver_hecke.cartan import GradeAssociator, RootVector
from quiver_hecke.characters import KClass, QCharacter, half
from quiver_hecke.errors import AlgebraMismatch, HypothesisFailed
from quiver_hecke.linalg import Vec
from quiver_hecke.qha import AlgebraElement, KLRAlgebra

logger = logging.getLogger(__name__)

Central = dict[str, tuple[DomainMatrix, object]]


class GradedModule:
    """
    A graded R(beta)-module with an explicit weight basis.

    Args:
        algebra: the algebra family (datum, associator, Q, base field)
        weight: beta, so that wt(M) = -beta
        words: idempotent slice of each basis vector
        degrees: degree of each basis vector (exact half-integers)
        x: action matrices of x_1 .. x_n
        tau: action matrices of tau_1 .. tau_{n-1}; None marks a generator
            that is not part of a parabolic restriction
        name: display label
        central: named commuting operators with their degrees, e.g. the
            parameter z of a truncated affinization
    """

    def __init__(
        self,
        algebra: KLRAlgebra,
        weight: RootVector,
        words: Sequence[tuple[str, ...]],
        degrees: Sequence,
        x: Sequence[DomainMatrix],
        tau: Sequence[Optional[DomainMatrix]],
        name: str = "M",
        central: Optional[Central] = None,
    ):
        self.algebra = algebra
        self.weight = weight
        self.words = [tuple(w) for w in words]
        self.degrees = [half(d) for d in degrees]
        self.x = list(x)
        self.tau = list(tau)
        self.name = name
        self.central: Central = dict(central or {})
        self._term_cache: dict = {}
        n = weight.height
        if len(self.x) != n or len(self.tau) != max(n - 1, 0):
            raise ValueError(f"{name}: expected {n} x-matrices and {max(n - 1, 0)} tau-matrices")

    @property
    def domain(self):
        return self.algebra.domain

    # ----- basic data -----

    @property
    def dim(self) -> int:
        return len(self.words)

    @property
    def height(self) -> int:
        return self.weight.height

    def wt(self) -> RootVector:
        return -self.weight

    def is_zero(self) -> bool:
        return self.dim == 0

    def is_affine(self) -> bool:
        return bool(self.central)

    @property
    def z(self) -> Optional[DomainMatrix]:
        """The first central operator, if any."""
        for mat, _ in self.central.values():
            return mat
        return None

    def slice_indices(self, word: Sequence[str]) -> list[int]:
        word = tuple(word)
        return [b for b, w in enumerate(self.words) if w == word]

    def support(self) -> list[tuple[str, ...]]:
        return sorted(set(self.words))

    def generators(self) -> list[tuple[str, int, DomainMatrix]]:
        gens = [("x", k, m) for k, m in enumerate(self.x)]
        gens += [("tau", l, m) for l, m in enumerate(self.tau) if m is not None]
        return gens

    def transform(
        self, fn: Callable[[DomainMatrix], DomainMatrix], words=None, degrees=None, name=None
    ) -> "GradedModule":
        """Same shape of data with every action matrix passed through fn."""
        return GradedModule(
            self.algebra,
            self.weight,
            self.words if words is None else words,
            self.degrees if degrees is None else degrees,
            [fn(m) for m in self.x],
            [None if m is None else fn(m) for m in self.tau],
            self.name if name is None else name,
            {v: (fn(m), d) for v, (m, d) in self.central.items()},
        )

    def __repr__(self) -> str:
        return f"GradedModule({self.name}, dim={self.dim}, weight={self.weight.coeffs})"

    # ----- actions -----

    def act_x(self, k: int, vec: Vec) -> Vec:
        return linalg.apply(self.x[k], vec)

    def act_tau(self, l: int, vec: Vec) -> Vec:
        mat = self.tau[l]
        if mat is None:
            raise HypothesisFailed(f"tau_{l + 1} is not part of this parabolic action")
        return linalg.apply(mat, vec)

    def act_term(self, w: perms.Perm, a: Sequence[int], b: int) -> Vec:
        """tau_w x^a applied to basis vector b (no idempotent check)."""
        key = (w, tuple(a), b)
        cached = self._term_cache.get(key)
        if cached is not None:
            return cached
        vec: Vec = {b: self.domain.one}
        for k, e in enumerate(a):
            for _ in range(e):
                vec = self.act_x(k, vec)
        for l in reversed(perms.lexmin_word(tuple(w))):
            if not vec:
                break
            vec = self.act_tau(l, vec)
        self._term_cache[key] = vec
        return vec

    def act_element(self, element: AlgebraElement, vec: Vec) -> Vec:
        if element.weight != self.weight:
            raise AlgebraMismatch("element and module have different weights")
        out: Vec = {}
        for (w, a, nu), c in element.terms.items():
            for b, v in vec.items():
                if self.words[b] != nu:
                    continue
                linalg.vec_add(out, self.act_term(w, a, b), c * v)
        return out

    def element_matrix(self, element: AlgebraElement) -> DomainMatrix:
        cols = [self.act_element(element, {b: self.domain.one}) for b in range(self.dim)]
        return linalg.from_columns(cols, self.dim, self.domain)

    # ----- derived data -----

    def character(self) -> QCharacter:
        return QCharacter.from_basis(zip(self.words, self.degrees))

    def kclass(self) -> KClass:
        return KClass(self.character().table)

    def to_dict(self) -> dict:
        """JSON module dump: basis metadata and sparse matrices with rational strings."""
        K = self.domain

        def dump(m: Optional[DomainMatrix]):
            if m is None:
                return None
            return [[i, j, str(K.to_sympy(v))] for i, j, v in linalg.entries(m)]

        return {
            "name": self.name,
            "weight": list(self.weight.coeffs),
            "basis": [
                {"word": list(w), "degree": str(half(d))} for w, d in zip(self.words, self.degrees)
            ],
            "x": [dump(m) for m in self.x],
            "tau": [dump(m) for m in self.tau],
            "central": {
                v: {"matrix": dump(m), "degree": str(d)} for v, (m, d) in self.central.items()
            },
        }

    @classmethod
    def from_dict(cls, algebra: KLRAlgebra, data: dict) -> "GradedModule":
        """Load a module dump over the algebra's base field."""
        K = algebra.domain
        n = len(data["basis"])

        def load(entries):
            if entries is None:
                return None
            dod: dict = {}
            for i, j, v in entries:
                dod.setdefault(i, {})[j] = K.from_sympy(sympify(v))
            return linalg.matrix(dod, (n, n), K)

        central = {
            v: (load(rec["matrix"]), half(rec["degree"]))
            for v, rec in data.get("central", {}).items()
        }
        return cls(
            algebra,
            RootVector(tuple(data["weight"])),
            [tuple(b["word"]) for b in data["basis"]],
            [b["degree"] for b in data["basis"]],
            [load(m) for m in data["x"]],
            [load(m) for m in data["tau"]],
            name=data.get("name", "M"),
            central=central,
        )


class TruncatedModule(GradedModule):
    """
    The degree <= ceiling window of a finitely generated module.

    Action images above the ceiling are dropped, so relations are only
    asserted on basis vectors of degree <= ceiling - margin.
    """

    def __init__(self, *args, ceiling=0, margin=0, **kwargs):
        super().__init__(*args, **kwargs)
        self.ceiling = half(ceiling)
        self.margin = half(margin)

    @property
    def reliable_upto(self):
        return self.ceiling - self.margin

    def window(self, upto=None) -> QCharacter:
        """Character restricted to degrees <= upto (the reliable range by default)."""
        bound = self.reliable_upto if upto is None else half(upto)
        return QCharacter.from_basis(
            (w, d) for w, d in zip(self.words, self.degrees) if d <= bound
        )


def window_character(M: GradedModule, upto) -> QCharacter:
    bound = half(upto)
    return QCharacter.from_basis((w, d) for w, d in zip(M.words, M.degrees) if d <= bound)


# ----- small constructors -----


def unit_module(algebra: KLRAlgebra) -> GradedModule:
    """The trivial module k over R(0)."""
    return GradedModule(algebra, algebra.datum.zero(), [()], [0], [], [], name="k")


def zero_module(algebra: KLRAlgebra, weight: RootVector, name: str = "0") -> GradedModule:
    n = weight.height
    empty = linalg.zeros(0, 0, algebra.domain)
    return GradedModule(algebra, weight, [], [], [empty] * n, [empty] * max(n - 1, 0), name=name)


def one_letter(algebra: KLRAlgebra, j: str) -> GradedModule:
    """<j> = R(alpha_j)/(x_1): one-dimensional, x_1 acting by zero."""
    K = algebra.domain
    return GradedModule(
        algebra, algebra.datum.root(j), [(j,)], [0], [linalg.zeros(1, 1, K)], [], name=f"<{j}>"
    )


def shift(M: GradedModule, d) -> GradedModule:
    """q^d M: every degree raised by d."""
    d = half(d)
    if not d:
        return M
    return M.transform(lambda m: m, degrees=[e + d for e in M.degrees], name=f"q^{d}{M.name}")


def submodule_on(M: GradedModule, indices: Sequence[int], name: str) -> GradedModule:
    """Restrict the action to a span of basis vectors assumed stable."""
    pos = {b: t for t, b in enumerate(indices)}
    K = M.domain
    n = len(indices)

    def cut(m: DomainMatrix) -> DomainMatrix:
        rows = linalg.rows_of(m)
        dod = {}
        for b in indices:
            for j, v in rows.get(b, {}).items():
                if j in pos:
                    dod.setdefault(pos[b], {})[pos[j]] = v
        return linalg.matrix(dod, (n, n), K)

    return M.transform(cut, [M.words[b] for b in indices], [M.degrees[b] for b in indices], name)


def _echelon(M: GradedModule, vectors: Iterable[Vec]) -> dict[int, Vec]:
    span = linalg.IncrementalBasis(M.domain)
    for v in vectors:
        span.add(v)
    return span.rows


def submodule(M: GradedModule, vectors: Iterable[Vec], name: str) -> GradedModule:
    """
    The submodule spanned by homogeneous vectors assumed stable under the action.

    The reduced echelon basis of a span of homogeneous vectors is homogeneous, and
    coordinates of a vector of the span are read off at the pivots.
    """
    rows = _echelon(M, vectors)
    pivots = sorted(rows)
    basis = [rows[p] for p in pivots]
    n = len(basis)
    K = M.domain

    def coords(vec: Vec) -> Vec:
        out = {t: vec[p] for t, p in enumerate(pivots) if vec.get(p)}
        check: Vec = {}
        for t, c in out.items():
            linalg.vec_add(check, basis[t], c)
        if check != {i: v for i, v in vec.items() if v}:
            raise HypothesisFailed(f"{name}: span is not stable under the action")
        return out

    def transport(m: DomainMatrix) -> DomainMatrix:
        return linalg.from_columns([coords(linalg.apply(m, basis[t])) for t in range(n)], n, K)

    sub = M.transform(transport, [M.words[p] for p in pivots], [M.degrees[p] for p in pivots],
                      name)
    sub.inclusion = basis
    return sub


def quotient(M: GradedModule, vectors: Iterable[Vec], name: str) -> GradedModule:
    """M / span(vectors) for a stable span of homogeneous vectors."""
    rows = _echelon(M, vectors)
    keep = [b for b in range(M.dim) if b not in rows]
    pos = {b: t for t, b in enumerate(keep)}
    K = M.domain
    n = len(keep)

    def project(vec: Vec) -> Vec:
        reduced = dict(vec)
        for p in sorted(rows):
            c = reduced.get(p)
            if c:
                linalg.vec_add(reduced, rows[p], -c)
        return {pos[b]: v for b, v in reduced.items() if v}

    def transport(m: DomainMatrix) -> DomainMatrix:
        return linalg.from_columns([project(linalg.apply(m, {b: K.one})) for b in keep], n, K)

    q = M.transform(transport, [M.words[b] for b in keep], [M.degrees[b] for b in keep], name)
    q.projection = project
    q.section = keep
    return q


def projection_matrix(M: GradedModule, Q: GradedModule) -> DomainMatrix:
    """Matrix of the quotient map M -> Q built by ``quotient``."""
    cols = [Q.projection({b: M.domain.one}) for b in range(M.dim)]
    return linalg.from_columns(cols, Q.dim, M.domain)


def inclusion_matrix(S: GradedModule, M: GradedModule) -> DomainMatrix:
    """Matrix of the inclusion S -> M built by ``submodule``."""
    return linalg.from_columns(S.inclusion, M.dim, M.domain)


# ----- relation checks -----


def _slice_poly(M: GradedModule, qdict_of, positions: Sequence[int], vec_index: int) -> Vec:
    """Apply sum c x_{p0}^a x_{p1}^b ... to one basis vector."""
    K = M.domain
    out: Vec = {}
    for exps, c in qdict_of(M.words[vec_index]).items():
        if not c:
            continue
        vec: Vec = {vec_index: K.one}
        for pos, e in zip(positions, exps):
            for _ in range(e):
                vec = M.act_x(pos, vec)
        linalg.vec_add(out, vec, c)
    return out


def check_relations(M: GradedModule, upto=None) -> list[str]:
    """
    Every violated defining relation or grading condition, as readable strings.

    With ``upto`` set, relations are only checked on basis vectors of degree
    at most ``upto`` (truncated windows).
    """
    alg = M.algebra
    n = M.height
    problems: list[str] = []
    one = M.domain.one
    bound = None if upto is None else half(upto)
    if bound is None and isinstance(M, TruncatedModule):
        bound = M.reliable_upto

    for name, k, m in M.generators():
        for i, j, v in linalg.entries(m):
            w = M.words[j]
            if name == "x":
                want_word, step = w, alg.deg_x(w[k])
            else:
                want_word = perms.act(perms.transposition(k, n), w)
                step = alg.deg_tau(w, k)
            if M.words[i] != want_word:
                problems.append(f"{name}_{k + 1} leaves the slice structure at column {j}")
            elif M.degrees[i] != M.degrees[j] + step:
                problems.append(f"{name}_{k + 1} has wrong degree at ({i}, {j})")
    for var, (mat, deg) in M.central.items():
        for i, j, v in linalg.entries(mat):
            if M.words[i] != M.words[j] or M.degrees[i] != M.degrees[j] + deg:
                problems.append(f"{var} is not homogeneous at ({i}, {j})")

    for b in range(M.dim):
        if bound is not None and M.degrees[b] > bound:
            continue
        nu = M.words[b]
        e = {b: one}
        for var, (mat, _) in M.central.items():
            for name, k, g in M.generators():
                if linalg.apply(mat, linalg.apply(g, e)) != linalg.apply(g, linalg.apply(mat, e)):
                    problems.append(f"{var} does not commute with {name}_{k + 1} on {b}")
        for k in range(n):
            for k2 in range(k + 1, n):
                if M.act_x(k, M.act_x(k2, e)) != M.act_x(k2, M.act_x(k, e)):
                    problems.append(f"x_{k + 1} x_{k2 + 1} != x_{k2 + 1} x_{k + 1} on {b}")
        for l in range(n - 1):
            if M.tau[l] is None:
                continue
            for k in range(n):
                lhs = M.act_tau(l, M.act_x(k, e))
                sk = l + 1 if k == l else l if k == l + 1 else k
                rhs = dict(M.act_x(sk, M.act_tau(l, e)))
                if nu[l] == nu[l + 1] and k in (l, l + 1):
                    linalg.vec_add(rhs, e, one if k == l + 1 else -one)
                if lhs != rhs:
                    problems.append(f"tau_{l + 1} x_{k + 1} relation fails on {b}")
            sq = M.act_tau(l, M.act_tau(l, e))
            want = _slice_poly(M, lambda w, l=l: alg.params.q(w[l], w[l + 1]), (l, l + 1), b)
            if sq != want:
                problems.append(f"tau_{l + 1}^2 relation fails on {b}")
            for l2 in range(l + 2, n - 1):
                if M.tau[l2] is None:
                    continue
                if M.act_tau(l, M.act_tau(l2, e)) != M.act_tau(l2, M.act_tau(l, e)):
                    problems.append(f"tau_{l + 1} tau_{l2 + 1} do not commute on {b}")
            if l + 2 < n and M.tau[l + 1] is not None:
                diff = dict(M.act_tau(l + 1, M.act_tau(l, M.act_tau(l + 1, e))))
                linalg.vec_add(diff, M.act_tau(l, M.act_tau(l + 1, M.act_tau(l, e))), -one)
                want = {}
                if nu[l] == nu[l + 2]:
                    want = _slice_poly(
                        M, lambda w, l=l: alg._qbar[(w[l], w[l + 1])], (l, l + 1, l + 2), b
                    )
                if diff != want:
                    problems.append(f"braid relation at {l + 1} fails on {b}")
    return problems


# ----- regrading and duals -----


def h_shift(lam_to: GradeAssociator, lam_from: GradeAssociator, word: Sequence[str]):
    """(1/2) sum_{a<b} c(alpha_{nu_a}, alpha_{nu_b}) with c = lam_to - lam_from."""
    total = 0
    for a in range(len(word)):
        for b in range(a + 1, len(word)):
            total += lam_to.value(word[a], word[b]) - lam_from.value(word[a], word[b])
    return half(total) / 2


def skew_h(lam: GradeAssociator, word: Sequence[str]):
    """(1/2) sum_{a<b} c(alpha_{nu_a}, alpha_{nu_b}) with c = lam + (., .)."""
    datum = lam.datum
    total = 0
    for a in range(len(word)):
        for b in range(a + 1, len(word)):
            total += lam.value(word[a], word[b]) + datum.form(word[a], word[b])
    return half(total) / 2


def regrade(M: GradedModule, lam_to: GradeAssociator) -> GradedModule:
    """K_c: move M to the grading lam_to, shifting the e(nu) slice by h(nu)."""
    lam_from = M.algebra.lam
    target = M.algebra.with_associator(lam_to) if lam_to is not lam_from else M.algebra
    degrees = [d + h_shift(lam_to, lam_from, w) for w, d in zip(M.words, M.degrees)]
    out = M.transform(lambda m: m, degrees=degrees, name=f"K({M.name})")
    out.algebra = target
    return out


def dual_star(M: GradedModule) -> GradedModule:
    """Graded dual twisted by the antiautomorphism fixing e(nu), x_k and tau_l."""
    lam = M.algebra.lam
    degrees = [-d + 2 * skew_h(lam, w) for w, d in zip(M.words, M.degrees)]
    out = M.transform(lambda m: m.transpose(), degrees=degrees, name=f"{M.name}*")
    return out


# ----- restriction -----


def restrict(M: GradedModule, alpha: RootVector, gamma: RootVector) -> GradedModule:
    """
    e(alpha, gamma) M with its R(alpha) x R(gamma) action.

    The result keeps the weight alpha + gamma and drops the generator
    tau_{ht(alpha)} joining the two blocks.
    """
    if alpha + gamma != M.weight:
        raise AlgebraMismatch("alpha + gamma must equal the module weight")
    m = alpha.height
    datum = M.algebra.datum
    keep = [b for b, w in enumerate(M.words) if datum.weight_of_word(w[:m]) == alpha]
    sub = submodule_on(M, keep, f"Res({M.name})")
    if 0 < m < M.height:
        sub.tau[m - 1] = None
    return sub


def E_i(M: GradedModule, i: str) -> GradedModule:
    """e(i, *) M as an R(beta - alpha_i)-module (x_k -> x_{k+1}, tau_l -> tau_{l+1})."""
    return _shifted_slice(M, i, first=True)


def E_i_star(M: GradedModule, i: str) -> GradedModule:
    """e(*, i) M as an R(beta - alpha_i)-module."""
    return _shifted_slice(M, i, first=False)


def E_i_affine(M: GradedModule, i: str, var: str = "z") -> GradedModule:
    """E_i(M) with the parameter var acting by the x_1 of M it forgets."""
    E = E_i(M, i)
    if E.is_zero():
        E.central = {var: (linalg.zeros(0, 0, M.domain), M.algebra.deg_x(i))}
        return E
    keep = [b for b, w in enumerate(M.words) if w[0] == i]
    x1 = submodule_on(M, keep, E.name).x[0]
    E.central = {var: (x1, M.algebra.deg_x(i))}
    return E


def _shifted_slice(M: GradedModule, i: str, first: bool) -> GradedModule:
    alg = M.algebra
    beta = M.weight - alg.datum.root(i)
    if any(c < 0 for c in beta.coeffs):
        return zero_module(alg, alg.datum.zero())
    keep = [b for b, w in enumerate(M.words) if (w[0] if first else w[-1]) == i]
    sub = submodule_on(M, keep, f"E{'' if first else '*'}_{i}({M.name})")
    if first:
        x, tau, words = sub.x[1:], sub.tau[1:], [w[1:] for w in sub.words]
    else:
        x, tau, words = sub.x[:-1], sub.tau[:-1], [w[:-1] for w in sub.words]
    return GradedModule(alg, beta, words, sub.degrees, x, tau, sub.name, sub.central)



def eps_i(M: GradedModule, i: str) -> int:
    """max n with E_i^n M != 0."""
    best = 0
    for w in M.words:
        k = 0
        while k < len(w) and w[k] == i:
            k += 1
        best = max(best, k)
    return best


def eps_i_star(M: GradedModule, i: str) -> int:
    best = 0
    for w in M.words:
        k = 0
        while k < len(w) and w[len(w) - 1 - k] == i:
            k += 1
        best = max(best, k)
    return best


def weight_supports(M: GradedModule) -> tuple[set, set]:
    """
    W(M) and W*(M): the gamma with e(gamma, beta - gamma)M != 0, resp.
    e(beta - gamma, gamma)M != 0, as coefficient tuples.
    """
    datum = M.algebra.datum
    prefixes, suffixes = set(), set()
    for w in set(M.words):
        for k in range(len(w) + 1):
            prefixes.add(datum.weight_of_word(w[:k]).coeffs)
            suffixes.add(datum.weight_of_word(w[k:]).coeffs)
    return prefixes, suffixes


def is_unmixed(M: GradedModule, N: GradedModule) -> bool:
    """W*(M) and W(N) meet only in 0."""
    _, w_star_m = weight_supports(M)
    w_n, _ = weight_supports(N)
    zero = M.algebra.datum.zero().coeffs
    return (w_star_m & w_n) <= {zero}


# ----- helpers shared by constructions -----


def basis_vector_word_degree(M: GradedModule, vec: Vec) -> tuple[tuple, object]:
    """Slice and degree of a homogeneous vector."""
    words = {M.words[b] for b in vec}
    degs = {M.degrees[b] for b in vec}
    if len(words) != 1 or len(degs) != 1:
        raise HypothesisFailed("vector is not homogeneous")
    return next(iter(words)), next(iter(degs))


def map_is_homomorphism(
    F: DomainMatrix, M: GradedModule, N: GradedModule, skip: Iterable[str] = ()
) -> bool:
    """Check G_N F = F G_M for every generator."""
    for (name, k, gm), (_, _, gn) in zip(M.generators(), N.generators()):
        if f"{name}{k}" in skip:
            continue
        if gn.matmul(F) != F.matmul(gm):
            return False
    return True

