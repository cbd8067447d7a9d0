"""Symbolic checks of the defining relations and of the commutation identities
for x_k and tau_k past a run tau_a ... tau_b.

Positions in this module are 1-based, as in the displayed identities; failures
are collected into the report rather than raised.
"""

import logging
import random
from itertools import chain, combinations, product
from typing import Iterable, Sequence

from sympy import Poly, symbols

from quiver_hecke import perms
from quiver_hecke.polys import divided_Q
from quiver_hecke.qha import (
    AlgebraElement,
    KLRAlgebra,
    central_p,
    intertwiner,
    multiply,
    product_of,
    sympy_poly_element,
)

logger = logging.getLogger(__name__)

MAX_FAILURES = 5
DEFAULT_SAMPLES = 100


def _subsets(items: Sequence[int]) -> Iterable[tuple[int, ...]]:
    return chain.from_iterable(combinations(items, r) for r in range(len(items) + 1))


class _Block:
    """Generators of R(beta) for the weight of one word nu, with 1-based indices."""

    def __init__(self, alg: KLRAlgebra, nu: Sequence[str]):
        self.alg = alg
        self.nu = tuple(nu)
        self.n = len(nu)
        self.beta = alg.datum.weight_of_word(nu)
        self.e = alg.e(nu)
        self.unit = alg.unit(self.beta)

    def x(self, k: int) -> AlgebraElement:
        return self.alg.x(k - 1, self.beta)

    def tau(self, l: int) -> AlgebraElement:
        return self.alg.tau(l - 1, self.beta)

    def taus(self, ls: Iterable[int]) -> AlgebraElement:
        """tau_{l_1} ... tau_{l_r} in the given order; the unit when empty."""
        return product_of([self.unit] + [self.tau(l) for l in ls])

    def run(self, a: int, b: int) -> AlgebraElement:
        return self.taus(range(a, b + 1))

    def poly(self, poly: Poly, positions: Sequence[int]) -> AlgebraElement:
        """sum over words of poly(x_{positions}) e(word)."""
        out = None
        zero_based = [p - 1 for p in positions]
        for word in self.alg.words(self.beta):
            term = sympy_poly_element(self.alg, poly, poly.gens, zero_based, word)
            out = term if out is None else out + term
        return out

    def Q(self, i: str, j: str, us: Sequence[int], v: int) -> AlgebraElement:
        """Q_{i,j}(x_{us}; x_v) as a polynomial element."""
        gens = symbols(f"u1:{len(us) + 1}")
        poly = divided_Q(self.alg.params, i, j, gens, symbols("v"))
        return self.poly(poly, list(us) + [v])

    def mul(self, *factors: AlgebraElement) -> AlgebraElement:
        """factors... e(nu)."""
        return product_of(list(factors) + [self.e])


class _Tally:
    def __init__(self, name: str):
        self.name = name
        self.checked = 0
        self.failures: list[dict] = []

    def check(self, lhs: AlgebraElement, rhs: AlgebraElement, **where) -> None:
        self.checked += 1
        if lhs == rhs:
            return
        if len(self.failures) < MAX_FAILURES:
            self.failures.append({**{k: str(v) for k, v in where.items()},
                                  "difference": str(lhs - rhs)})
        elif len(self.failures) == MAX_FAILURES:
            logger.warning("%s: more than %d failures, keeping the first", self.name,
                           MAX_FAILURES)

    def report(self) -> dict:
        total = self.checked
        return {"identity": self.name, "checked": total, "failed": len(self.failures),
                "failures": self.failures, "pass": not self.failures}


def all_words(alg: KLRAlgebra, max_height: int, min_height: int = 1):
    labels = alg.datum.index_set
    for n in range(min_height, max_height + 1):
        yield from product(labels, repeat=n)


# ----- defining relations -----


def verify_relations(alg: KLRAlgebra, max_height: int = 4) -> dict:
    """
    Every defining relation, the centrality of p_{i,beta} and the braid relation of
    the intertwiners, instantiated at every word of height <= max_height.
    """
    tallies = {name: _Tally(name) for name in (
        "x commute", "tau idempotent", "tau far commute", "tau square", "tau x",
        "braid", "central p", "intertwiner braid")}
    for nu in all_words(alg, max_height):
        B = _Block(alg, nu)
        n = B.n
        for k, k2 in combinations(range(1, n + 1), 2):
            tallies["x commute"].check(B.mul(B.x(k), B.x(k2)), B.mul(B.x(k2), B.x(k)),
                                       nu=nu, k=k, k2=k2)
        for l in range(1, n):
            swapped = alg.e(perms.act(perms.transposition(l - 1, n), nu))
            tallies["tau idempotent"].check(B.mul(B.tau(l)), multiply(swapped, B.mul(B.tau(l))),
                                            nu=nu, l=l)
            Q = B.Q(nu[l - 1], nu[l], [l], l + 1)
            tallies["tau square"].check(B.mul(B.tau(l), B.tau(l)), B.mul(Q), nu=nu, l=l)
            for k in range(1, n + 1):
                image = l + 1 if k == l else l if k == l + 1 else k
                lhs = B.mul(B.tau(l), B.x(k)) - B.mul(B.x(image), B.tau(l))
                sign = (k == l + 1) - (k == l)
                rhs = B.e * sign if nu[l - 1] == nu[l] else B.e * 0
                tallies["tau x"].check(lhs, rhs, nu=nu, l=l, k=k)
            for l2 in range(l + 2, n):
                tallies["tau far commute"].check(B.mul(B.tau(l), B.tau(l2)),
                                                 B.mul(B.tau(l2), B.tau(l)), nu=nu, l=l, l2=l2)
        for l in range(1, n - 1):
            lhs = B.mul(B.tau(l + 1), B.tau(l), B.tau(l + 1)) - B.mul(B.tau(l), B.tau(l + 1),
                                                                      B.tau(l))
            if nu[l - 1] == nu[l + 1]:
                rhs = B.mul(B.Q(nu[l - 1], nu[l], [l, l + 2], l + 1))
            else:
                rhs = B.e * 0
            tallies["braid"].check(lhs, rhs, nu=nu, l=l)
            phi = [intertwiner(m, B.beta, alg) for m in (l - 1, l)]
            tallies["intertwiner braid"].check(B.mul(phi[0], phi[1], phi[0]),
                                               B.mul(phi[1], phi[0], phi[1]), nu=nu, l=l)
        for i in set(nu):
            p = central_p(i, B.beta, alg)
            gens = [B.x(k) for k in range(1, n + 1)] + [B.tau(l) for l in range(1, n)]
            for g in gens:
                tallies["central p"].check(B.mul(p, g), B.mul(g, p), nu=nu, i=i)
    reports = [t.report() for t in tallies.values()]
    logger.info("relations up to height %d: %d checks", max_height,
                sum(r["checked"] for r in reports))
    return {"max_height": max_height, "identities": reports,
            "pass": all(r["pass"] for r in reports)}


def _random_term(alg: KLRAlgebra, nu_weight_words: list, rng: random.Random, max_exp: int):
    nu = rng.choice(nu_weight_words)
    n = len(nu)
    w = tuple(rng.sample(range(n), n))
    a = tuple(rng.randint(0, max_exp) for _ in range(n))
    c = alg.domain.convert(rng.choice([-2, -1, 1, 2, 3]))
    return alg.element({(w, a, nu): c}, alg.datum.weight_of_word(nu))


def verify_associativity(alg: KLRAlgebra, max_height: int = 4, samples: int = DEFAULT_SAMPLES,
                         seed: int = 0, max_exp: int = 1) -> dict:
    """(ab)c == a(bc) and homogeneity of products on seeded random normal-form terms."""
    rng = random.Random(seed)
    words = list(all_words(alg, max_height, 2))
    assoc = _Tally("associativity")
    homog = _Tally("homogeneous product")
    for _ in range(samples):
        nu = rng.choice(words)
        pool = alg.words(alg.datum.weight_of_word(nu))
        a, b, c = (_random_term(alg, pool, rng, max_exp) for _ in range(3))
        left = multiply(multiply(a, b), c)
        assoc.check(left, multiply(a, multiply(b, c)), a=a, b=b, c=c)
        homog.checked += 1
        if not left.is_homogeneous() and len(homog.failures) < MAX_FAILURES:
            homog.failures.append({"a": str(a), "b": str(b), "c": str(c),
                                   "degrees": str(sorted(left.degrees()))})
    reports = [assoc.report(), homog.report()]
    return {"samples": samples, "seed": seed, "identities": reports,
            "pass": all(r["pass"] for r in reports)}


# ----- commutation identities -----


def _x_past_run(alg: KLRAlgebra, words) -> dict:
    tally = _Tally("x_k past tau_a...tau_b")
    for nu in words:
        B = _Block(alg, nu)
        n = B.n
        for a in range(1, n):
            for b in range(a, n):
                T = B.run(a, b)
                for k in range(1, n + 1):
                    lhs = B.mul(B.x(k), T)
                    if k == a:
                        rhs = B.mul(T, B.x(b + 1))
                        for s in range(a, b + 1):
                            if nu[s - 1] == nu[b]:
                                rhs = rhs - B.mul(B.run(a, s - 1), B.run(s + 1, b))
                    elif a < k <= b + 1:
                        rhs = B.mul(T, B.x(k - 1))
                        if nu[k - 2] == nu[b]:
                            rhs = rhs + B.mul(B.run(a, k - 2), B.run(k, b))
                    else:
                        rhs = B.mul(T, B.x(k))
                    tally.check(lhs, rhs, nu=nu, a=a, b=b, k=k)
    return tally.report()


def _tau_past_Q(alg: KLRAlgebra, words) -> dict:
    tally = _Tally("tau_a...tau_b past Q_{i,j}")
    for nu in words:
        B = _Block(alg, nu)
        n = B.n
        for a in range(1, n + 1):
            for b in range(a - 1, n):
                outside = [s for s in range(1, n + 1) if not a <= s <= b + 1]
                i = nu[b]
                for k in outside:
                    j = nu[k - 1]
                    rest = [s for s in outside if s != k]
                    for gamma in _subsets(rest):
                        lhs = B.mul(B.run(a, b), B.Q(i, j, [b + 1, *gamma], k))
                        rhs = B.e * 0
                        candidates = [s for s in range(a, b + 1) if nu[s - 1] == i]
                        for sigma in _subsets(candidates):
                            us = [a] + [s + 1 for s in sigma] + list(gamma)
                            kept = [s for s in range(a, b + 1) if s not in sigma]
                            rhs = rhs + B.mul(B.Q(i, j, us, k), B.taus(kept))
                        tally.check(lhs, rhs, nu=nu, a=a, b=b, k=k, gamma=gamma)
    return tally.report()


def _run_past_tau(alg: KLRAlgebra, words) -> dict:
    tally = _Tally("tau_a...tau_b past tau_k")
    for nu in words:
        B = _Block(alg, nu)
        n = B.n
        for a in range(1, n):
            for b in range(a, n):
                T = B.run(a, b)
                for k in range(1, n):
                    lhs = B.mul(T, B.tau(k))
                    if k > b + 1 or k < a - 1:
                        rhs = B.mul(B.tau(k), T)
                    elif k == b + 1:
                        rhs = B.mul(B.run(a, b + 1))
                    elif k == b:
                        rhs = B.e * 0
                        i = nu[b - 1]
                        candidates = [s for s in range(a, b) if nu[s - 1] == i]
                        for sigma in _subsets(candidates):
                            us = [a] + [s + 1 for s in sigma]
                            kept = [s for s in range(a, b) if s not in sigma]
                            rhs = rhs + B.mul(B.Q(i, nu[b], us, b + 1), B.taus(kept))
                    elif a <= k < b:
                        rhs = B.mul(B.tau(k + 1), T)
                        if nu[k - 1] == nu[b]:
                            i = nu[b]
                            candidates = [s for s in range(a, k) if nu[s - 1] == i]
                            for sigma in _subsets(candidates):
                                us = [a] + [s + 1 for s in sigma] + [k + 2]
                                kept = [s for s in range(a, k) if s not in sigma]
                                kept += list(range(k + 2, b + 1))
                                rhs = rhs - B.mul(B.Q(i, nu[k], us, k + 1), B.taus(kept))
                    else:
                        rhs = B.mul(B.tau(a), B.taus([a - 1, *range(a + 1, b + 1)]))
                    tally.check(lhs, rhs, nu=nu, a=a, b=b, k=k)
    return tally.report()


def _divided_symmetry(alg: KLRAlgebra, max_t: int = 3) -> dict:
    tally = _Tally("divided difference symmetry")
    labels = alg.datum.index_set
    v = symbols("v")
    for i in labels:
        for j in labels:
            for t in range(2, max_t + 1):
                us = symbols(f"u1:{t + 1}")
                P = divided_Q(alg.params, i, j, us, v)
                swapped = divided_Q(alg.params, i, j, (us[1], us[0]) + tuple(us[2:]), v)
                tally.checked += 1
                if P.as_expr().expand() != swapped.as_expr().expand():
                    tally.failures.append({"i": i, "j": j, "t": str(t)})
    return tally.report()


def verify_commutation_identities(alg: KLRAlgebra, max_height: int = 4) -> dict:
    """
    The three commutation identities for a run tau_a ... tau_b (against x_k, against
    a divided difference Q_{i,j}, against tau_k) at every word of height <= max_height,
    plus the symmetry of the divided differences.
    """
    words = list(all_words(alg, max_height, 2))
    reports = [
        _x_past_run(alg, words),
        _tau_past_Q(alg, words),
        _run_past_tau(alg, words),
        _divided_symmetry(alg),
    ]
    for r in reports:
        logger.info("%s: %d checked, %d failed", r["identity"], r["checked"], r["failed"])
    return {"max_height": max_height, "identities": reports,
            "pass": all(r["pass"] for r in reports)}
