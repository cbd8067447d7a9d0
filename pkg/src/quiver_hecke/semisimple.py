"""Heads, socles and simplicity of finite graded modules.

The image A of the algebra in End(M) is spanned by products g_1 ... g_r e(nu) of
generator matrices. Over a field of characteristic 0 its Jacobson radical is the
kernel of the trace form (a, b) -> tr(ab), computed degree by degree, since the
pairing only joins A_d with A_{-d}.

Composition factors are read off characters: simples are built as heads of
<j> o S and their shifted characters are linearly independent.
"""

import logging
import threading
from dataclasses import dataclass

from sympy.polys.domains import QQ
from sympy.polys.matrices import DomainMatrix

from quiver_hecke import linalg
from quiver_hecke.cartan import RootVector
from quiver_hecke.characters import Laurent, QCharacter, half
from quiver_hecke.convolution import convolution
from quiver_hecke.errors import HypothesisFailed
from quiver_hecke.gmod import GradedModule, one_letter, quotient, shift, submodule
from quiver_hecke.linalg import Vec
from quiver_hecke.qha import KLRAlgebra

logger = logging.getLogger(__name__)


@dataclass
class ImageAlgebra:
    """Homogeneous spanning matrices of the image of R(beta) in End(M)."""

    module: GradedModule
    elements: list[tuple[object, DomainMatrix]]

    @property
    def dim(self) -> int:
        return len(self.elements)


def _flatten(m: DomainMatrix) -> Vec:
    n = m.shape[1]
    return {i * n + j: v for i, j, v in linalg.entries(m)}


def _projector(M: GradedModule, word) -> DomainMatrix:
    K = M.domain
    dod = {b: {b: K.one} for b in M.slice_indices(word)}
    return linalg.matrix(dod, (M.dim, M.dim), K)


def image_algebra(M: GradedModule) -> ImageAlgebra:
    """Close the idempotent projectors under left multiplication by generators."""
    if M.algebra.domain.characteristic() != 0:
        raise HypothesisFailed("radicals are computed through the trace form in characteristic 0")
    K = M.domain
    span = linalg.IncrementalBasis(K)
    elements: list[tuple[object, DomainMatrix]] = []
    queue: list[tuple[object, tuple, DomainMatrix]] = []
    alg = M.algebra
    n = M.height
    for word in M.support():
        P = _projector(M, word)
        if span.add(_flatten(P)):
            elements.append((0, P))
            queue.append((0, word, P))
    while queue:
        deg, word, m = queue.pop()
        steps = [(M.x[k], word, alg.deg_x(word[k])) for k in range(n)]
        for l in range(n - 1):
            if M.tau[l] is None:
                continue
            swapped = word[:l] + (word[l + 1], word[l]) + word[l + 2:]
            steps.append((M.tau[l], swapped, alg.deg_tau(word, l)))
        for g, target, step in steps:
            prod = g.matmul(m)
            if linalg.is_zero(prod) or not span.add(_flatten(prod)):
                continue
            elements.append((deg + step, prod))
            queue.append((deg + step, target, prod))
    logger.debug("image algebra of %s: dim %d", M.name, len(elements))
    return ImageAlgebra(M, elements)


def radical(A: ImageAlgebra) -> list[DomainMatrix]:
    """Homogeneous basis of rad(A) from the degenerate part of the trace form."""
    K = A.module.domain
    by_degree: dict = {}
    for d, m in A.elements:
        by_degree.setdefault(d, []).append(m)
    out: list[DomainMatrix] = []
    for d, mats in by_degree.items():
        partners = by_degree.get(-d, [])
        rows = []
        for b in partners:
            rows.append({p: linalg.trace_product(a, b) for p, a in enumerate(mats)})
        for vec in linalg.solve_homogeneous(rows, len(mats), K):
            total = None
            for p, c in vec.items():
                total = mats[p] * c if total is None else total + mats[p] * c
            if total is not None and not linalg.is_zero(total):
                out.append(total)
    return out


def radical_vectors(M: GradedModule) -> list[Vec]:
    """Homogeneous spanning vectors of rad(M) = rad(A) M."""
    rad = radical(image_algebra(M))
    vectors: list[Vec] = []
    for R in rad:
        for col in linalg.columns_of(R).values():
            blocks: dict = {}
            for i, v in col.items():
                blocks.setdefault((M.words[i], M.degrees[i]), {})[i] = v
            vectors.extend(blocks.values())
    return vectors


def semisimple_head(M: GradedModule) -> GradedModule:
    """M / rad(A) M."""
    return quotient(M, radical_vectors(M), f"hd({M.name})")


def socle(M: GradedModule) -> GradedModule:
    """{m : rad(A) m = 0}, computed block by block."""
    rad = radical(image_algebra(M))
    K = M.domain
    blocks: dict = {}
    for b, key in enumerate(zip(M.words, M.degrees)):
        blocks.setdefault(key, []).append(b)
    vectors: list[Vec] = []
    for members in blocks.values():
        rows: list[dict] = []
        for R in rad:
            cols = linalg.columns_of(R)
            stacked: dict = {}
            for t, b in enumerate(members):
                for i, v in cols.get(b, {}).items():
                    stacked.setdefault(i, {})[t] = v
            rows.extend(stacked.values())
        for vec in linalg.solve_homogeneous(rows, len(members), K):
            vectors.append({members[t]: v for t, v in vec.items()})
    return submodule(M, vectors, f"soc({M.name})")


def is_semisimple(M: GradedModule) -> bool:
    return not radical(image_algebra(M))


def is_simple(M: GradedModule) -> bool:
    """Nonzero, semisimple and with one-dimensional HOM(M, M)."""
    from quiver_hecke.homs import hom_space

    if M.dim == 0 or not is_semisimple(M):
        return False
    return hom_space(M, M).dim == 1


# ----- composition factors -----

_SIMPLES: dict = {}
_SIMPLES_LOCK = threading.Lock()


def _lowest(ch: QCharacter):
    return min(d for lp in ch.table.values() for d, _ in lp.coeffs)


def simple_modules(alg: KLRAlgebra, weight: RootVector) -> list[GradedModule]:
    """
    One representative per simple of R(weight) up to shift, as hd(<j> o S) over the
    simples S of weight - alpha_j. Representatives have lowest degree 0.
    """
    key = (alg.key(), weight.coeffs)
    cached = _SIMPLES.get(key)
    if cached is not None:
        return cached
    datum = alg.datum
    letters = [j for j, b in zip(datum.index_set, weight.coeffs) if b > 0]
    if weight.height == 1:
        out = [one_letter(alg, letters[0])]
    else:
        seen: set = set()
        out = []
        for j in letters:
            for S in simple_modules(alg, weight - datum.root(j)):
                H = semisimple_head(convolution(one_letter(alg, j), S))
                ch = H.character()
                H = shift(H, -_lowest(ch))
                tag = repr(H.character().to_dict())
                if tag not in seen:
                    seen.add(tag)
                    H.name = f"L{len(out)}{list(weight.coeffs)}"
                    out.append(H)
    logger.debug("weight %s: %d simples", weight.coeffs, len(out))
    with _SIMPLES_LOCK:
        _SIMPLES[key] = out
    return out


def composition_factors(ch: QCharacter, simples: list[GradedModule]) -> dict[int, Laurent]:
    """
    The multiplicities m_S(q) with ch = sum_S m_S ch(S); virtual characters give
    negative coefficients.

    Raises:
        HypothesisFailed: when ch is not in the span of the given simples
    """
    if all(lp.is_zero() for lp in ch.table.values()):
        return {}
    chars = [S.character() for S in simples]
    lo = _lowest(ch) - max(d for c in chars for lp in c.table.values() for d, _ in lp.coeffs)
    top = max(d for lp in ch.table.values() for d, _ in lp.coeffs)
    hi = top - min(_lowest(c) for c in chars)
    step = half("1/2")
    shifts = []
    d = lo
    while d <= hi:
        shifts.append(d)
        d += step
    rows: dict = {}

    def row(word, degree) -> int:
        return rows.setdefault((word, degree), len(rows))

    dod: dict = {}
    columns = [(s, t) for s in range(len(simples)) for t in shifts]
    for col, (s, t) in enumerate(columns):
        for word, lp in chars[s].table.items():
            for e, c in lp.coeffs:
                dod.setdefault(row(word, e + t), {})[col] = QQ(c)
    b = {row(word, e): QQ(c) for word, lp in ch.table.items() for e, c in lp.coeffs}
    A = linalg.matrix(dod, (len(rows), len(columns)), QQ)
    sol = linalg.solve(A, b)
    if sol is None:
        raise HypothesisFailed("character is not a combination of the given simples")
    acc: dict[int, dict] = {}
    for col, v in sol.items():
        s, t = columns[col]
        if QQ.to_sympy(v).q != 1:
            raise HypothesisFailed("composition multiplicity is not an integer")
        acc.setdefault(s, {})[t] = int(QQ.to_sympy(v))
    return {s: Laurent.from_dict(m) for s, m in acc.items() if Laurent.from_dict(m).coeffs}


@dataclass
class HeadReport:
    """hd(M) and its composition factors up to shift."""

    head: GradedModule
    factors: list[tuple[GradedModule, Laurent]]

    @property
    def simple(self) -> bool:
        return sum(m.at_one() for _, m in self.factors) == 1

    def to_dict(self) -> dict:
        """Convert to dictionary for JSON serialization."""
        return {
            "head": self.head.name,
            "dim": self.head.dim,
            "simple": self.simple,
            "factors": [
                {"simple": S.name, "dim": S.dim, "multiplicity": m.to_json()}
                for S, m in self.factors
            ],
        }


def head_report(M: GradedModule) -> HeadReport:
    head = semisimple_head(M)
    if head.dim == 0:
        return HeadReport(head, [])
    simples = simple_modules(M.algebra, M.weight)
    mult = composition_factors(head.character(), simples)
    return HeadReport(head, [(simples[s], m) for s, m in sorted(mult.items())])


def simple_head(M: GradedModule) -> GradedModule:
    """
    The head of M. When it is not simple a warning lists its composition factors;
    use ``head_report`` to get them.

    Raises:
        HypothesisFailed: in positive characteristic
    """
    head = semisimple_head(M)
    if head.dim and not is_simple(head):
        report = head_report(M)
        logger.warning(
            "head of %s is semisimple of dim %d but not simple: %s",
            M.name,
            head.dim,
            ", ".join(f"{S.name}^({m})" for S, m in report.factors),
        )
    return head
