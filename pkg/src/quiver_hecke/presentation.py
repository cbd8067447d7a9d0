"""Modules given by generators and relations, computed on a degree window.

A presentation is a list of generators u_g (a word and a degree) and relations
r u_g = 0 with r homogeneous in R(beta) e(nu_g). The free window spans the PBW
terms tau_w x^a u_g of degree <= D; the relation window spans t r u_g for all
PBW terms t with deg(t r u_g) <= D, which is the exact degree <= D part of the
left submodule generated by the relations.
"""

import logging
from dataclasses import dataclass, field
from itertools import product
from typing import Optional, Sequence

from quiver_hecke import linalg, perms
from quiver_hecke.cartan import RootVector
from quiver_hecke.characters import floor_of, half
from quiver_hecke.errors import CeilingTooSmall, WeightMismatch
from quiver_hecke.gmod import GradedModule, TruncatedModule, quotient
from quiver_hecke.qha import AlgebraElement, Key, KLRAlgebra

logger = logging.getLogger(__name__)

DEFAULT_WINDOW_CAP = 4


@dataclass
class Presentation:
    """Generators (word, degree), relations (generator, element) and central endomorphisms."""

    algebra: KLRAlgebra
    weight: RootVector
    generators: list[tuple[tuple[str, ...], object]]
    relations: list[tuple[int, AlgebraElement]] = field(default_factory=list)
    # name -> (images of the generators as (generator, element) lists, degree)
    central: dict = field(default_factory=dict)
    name: str = "M"

    def max_step(self) -> int:
        """Largest positive degree of a single generator action on these words."""
        alg = self.algebra
        best = 0
        for nu in alg.words(self.weight):
            for k in range(len(nu)):
                best = max(best, alg.deg_x(nu[k]))
            for l in range(len(nu) - 1):
                best = max(best, alg.deg_tau(nu, l))
        return best


def pbw_keys(alg: KLRAlgebra, source: Sequence[str], budget) -> list[tuple[Key, object]]:
    """PBW terms tau_w x^a e(source) of degree <= budget, with their degrees."""
    source = tuple(source)
    n = len(source)
    steps = [alg.deg_x(letter) for letter in source]
    out = []
    for w in perms.all_perms(n):
        w = tuple(w)
        base = alg.tau_degree(w, source)
        if base > budget:
            continue
        bound = [floor_of(half(budget - base) / s) if s > 0 else 0 for s in steps]
        for a in product(*(range(b + 1) for b in bound)):
            d = base + sum(e * s for e, s in zip(a, steps))
            if d <= budget:
                out.append(((w, tuple(a), source), d))
    return out


def _free_window(P: Presentation, ceiling):
    alg = P.algebra
    basis: list[tuple[int, Key]] = []
    degrees: list = []
    for g, (word, deg) in enumerate(P.generators):
        if alg.datum.weight_of_word(word) != P.weight:
            raise WeightMismatch(f"generator word {word} has the wrong weight")
        for key, d in pbw_keys(alg, word, ceiling - half(deg)):
            basis.append((g, key))
            degrees.append(half(deg) + d)
    return basis, degrees


def _terms_to_vec(index: dict, g: int, terms) -> dict:
    vec: dict = {}
    for key, c in terms.items():
        pos = index.get((g, key))
        if pos is not None and c:
            linalg.vec_add(vec, {pos: c})
    return vec


def module_from_presentation(P: Presentation, ceiling, margin=None) -> TruncatedModule:
    """
    The degree <= ceiling window of the presented module.

    Raises:
        CeilingTooSmall: when the window does not leave one action margin above
            the highest generator
    """
    alg = P.algebra
    ceiling = half(ceiling)
    margin = half(3 * P.max_step() if margin is None else margin)
    top = max((half(d) for _, d in P.generators), default=half(0))
    if ceiling - margin < top:
        raise CeilingTooSmall(
            f"ceiling {ceiling} leaves no room above generator degree {top} (margin {margin})"
        )
    alg._reset_fuel()
    basis, degrees = _free_window(P, ceiling)
    index = {entry: pos for pos, entry in enumerate(basis)}
    K = alg.domain
    dim = len(basis)
    n = P.weight.height
    logger.debug("presentation %s: free window of dim %d below %s", P.name, dim, ceiling)

    def action(step):
        cols = [_terms_to_vec(index, g, step(key)) for g, key in basis]
        return linalg.from_columns(cols, dim, K)

    x = [action(lambda key, k=k: alg.x_left(k, key)) for k in range(n)]
    tau = [action(lambda key, l=l: alg.tau_left(l, key)) for l in range(n - 1)]

    def right_multiply(images):
        cols = []
        for g, key in basis:
            col: dict = {}
            for g2, element in images.get(g, []):
                for rkey, c in element.terms.items():
                    linalg.vec_add(col, _terms_to_vec(index, g2, alg.multiply_keys(key, rkey)), c)
            cols.append(col)
        return linalg.from_columns(cols, dim, K)

    central = {}
    for var, (images, deg) in P.central.items():
        central[var] = (right_multiply(images), half(deg))

    words = [perms.act(key[0], key[2]) for _, key in basis]
    free = GradedModule(alg, P.weight, words, degrees, x, tau, f"F({P.name})", central)

    ideal = []
    for g, r in P.relations:
        if not r.is_homogeneous():
            raise ValueError("relations must be homogeneous")
        if r.is_zero():
            continue
        d_r = r.degree()
        base = half(P.generators[g][1]) + d_r
        targets = sorted({perms.act(w, nu) for (w, a, nu) in r.terms})
        for rho in targets:
            for tkey, d in pbw_keys(alg, rho, ceiling - base):
                vec: dict = {}
                for rkey, c in r.terms.items():
                    linalg.vec_add(vec, _terms_to_vec(index, g, alg.multiply_keys(tkey, rkey)), c)
                if vec:
                    ideal.append(vec)
    Q = quotient(free, ideal, P.name)
    out = TruncatedModule(alg, P.weight, Q.words, Q.degrees, Q.x, Q.tau, P.name, Q.central,
                          ceiling=ceiling, margin=margin)
    unit = (perms.identity(n), (0,) * n)
    out.generator_vectors = [
        Q.projection({index[(g, unit + (tuple(word),))]: K.one})
        for g, (word, _) in enumerate(P.generators)
    ]
    return out


def finite_from_presentation(
    P: Presentation, ceiling=None, cap: int = DEFAULT_WINDOW_CAP
) -> GradedModule:
    """
    A presented module known to be finite-dimensional, as an ordinary module.

    The window is doubled until no basis vector sits in the unreliable top
    margin, so that every action image lies inside it.

    Raises:
        CeilingTooSmall: when ``cap`` doublings do not close the window
    """
    margin = half(3 * P.max_step())
    top = max((half(d) for _, d in P.generators), default=half(0))
    D = half(ceiling) if ceiling is not None else top + 2 * margin
    for _ in range(cap):
        window = module_from_presentation(P, D, margin)
        if all(d <= D - margin for d in window.degrees):
            return GradedModule(P.algebra, P.weight, window.words, window.degrees, window.x,
                                window.tau, P.name, window.central)
        D = top + 2 * (D - top)
    raise CeilingTooSmall(f"{P.name}: window did not close below {D}")


def cyclic(
    alg: KLRAlgebra, word: Sequence[str], relations: Sequence[AlgebraElement], name: str,
    degree=0, central: Optional[dict] = None,
) -> Presentation:
    """One generator u with e(word) u = u and the given relations r u = 0."""
    word = tuple(word)
    weight = alg.datum.weight_of_word(word)
    rels = [(0, r) for r in relations]
    cen = {var: ({0: [(0, element)]}, deg) for var, (element, deg) in (central or {}).items()}
    return Presentation(alg, weight, [(word, degree)], rels, cen, name)
