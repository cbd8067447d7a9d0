"""The polynomials Q_{j,k}, their divided differences and base fields."""

import logging
from dataclasses import dataclass
from functools import lru_cache
from typing import Sequence

from sympy import Poly, Symbol, cancel, expand, isprime
from sympy.polys.domains import GF, QQ
from sympy.polys.domains.domain import Domain

from quiver_hecke.cartan import CartanDatum, extended_label

logger = logging.getLogger(__name__)

# Coefficients of Q_{j,k}(u, v) keyed by the exponent pair (p, q) of u^p v^q.
QDict = dict[tuple[int, int], object]


def field_domain(spec: str = "Q") -> Domain:
    """
    Resolve a field name: 'Q' for the rationals or 'Fp:<p>' / 'GF(<p>)' for a prime field.

    Raises:
        ValueError: if p is not an odd prime
    """
    text = spec.strip().upper()
    if text in ("Q", "QQ"):
        return QQ
    for prefix in ("FP:", "GF(", "FP"):
        if text.startswith(prefix):
            p = int(text[len(prefix):].rstrip(")"))
            if not isprime(p) or p == 2:
                raise ValueError(f"field characteristic must be an odd prime, got {p}")
            return GF(p)
    raise ValueError(f"unknown field {spec!r}; use 'Q' or 'Fp:<p>'")


@dataclass
class QParams:
    """Coefficients of Q_{j,k}(u, v) for every ordered pair of indices."""

    datum: CartanDatum
    domain: Domain
    table: dict[tuple[str, str], QDict]

    def q(self, j: str, k: str) -> QDict:
        return self.table[(j, k)]

    def validate(self) -> None:
        """
        Check symmetry, homogeneity and the invertible leading coefficient.

        Raises:
            ValueError: on the first violated condition
        """
        datum = self.datum
        for j in datum.index_set:
            for k in datum.index_set:
                q = self.table[(j, k)]
                if j == k:
                    if any(q.values()):
                        raise ValueError(f"Q_{{{j},{j}}} must vanish")
                    continue
                swapped = {(b, a): c for (a, b), c in self.table[(k, j)].items()}
                if {m: c for m, c in q.items() if c} != {m: c for m, c in swapped.items() if c}:
                    raise ValueError(f"Q_{{{j},{k}}}(u,v) != Q_{{{k},{j}}}(v,u)")
                target = -2 * datum.form(j, k)
                for (p, r), c in q.items():
                    if c and p * datum.form(j, j) + r * datum.form(k, k) != target:
                        raise ValueError(f"Q_{{{j},{k}}} has non-homogeneous term u^{p} v^{r}")
                if not q.get((-datum.c(j, k), 0)):
                    raise ValueError(f"Q_{{{j},{k}}} leading coefficient vanishes")

    def key(self) -> tuple:
        return tuple(
            sorted((pair, tuple(sorted((m, str(c)) for m, c in q.items() if c)))
                   for pair, q in self.table.items())
        )

    def to_dict(self) -> dict:
        """Convert to dictionary for JSON serialization."""
        return {
            f"{j},{k}": [{"u": p, "v": r, "coef": str(c)} for (p, r), c in sorted(q.items()) if c]
            for (j, k), q in sorted(self.table.items())
        }


def default_qparams(datum: CartanDatum, domain: Domain = QQ) -> QParams:
    """
    Q_{j,k}(u,v) = u^{-c_jk} + v^{-c_kj} on edges and 1 off edges.

    On an extended datum the pairs involving the new vertex i± use
    Q_{i±,i}(u,v) = u - v and Q_{i±,k} = 1.
    """
    one = domain.one
    table: dict[tuple[str, str], QDict] = {}
    ext = None
    if datum.ext_i is not None:
        ext = extended_label(datum.ext_i, datum.ext_sign)
    for j in datum.index_set:
        for k in datum.index_set:
            if j == k:
                table[(j, k)] = {}
            elif ext is not None and j == ext and k == datum.ext_i:
                table[(j, k)] = {(1, 0): one, (0, 1): -one}
            elif ext is not None and k == ext and j == datum.ext_i:
                table[(j, k)] = {(0, 1): one, (1, 0): -one}
            elif datum.c(j, k) == 0:
                table[(j, k)] = {(0, 0): one}
            else:
                table[(j, k)] = {(-datum.c(j, k), 0): one, (0, -datum.c(k, j)): one}
    params = QParams(datum, domain, table)
    params.validate()
    return params


def qbar(q: QDict) -> dict[tuple[int, int, int], object]:
    """(Q(u,v) - Q(w,v)) / (u - w) as coefficients of u^r v^q w^s."""
    out: dict[tuple[int, int, int], object] = {}
    for (p, r), c in q.items():
        if not c:
            continue
        for a in range(p):
            key = (a, r, p - 1 - a)
            out[key] = out.get(key, 0) + c
    return {k: c for k, c in out.items() if c}


def q_expr(params: QParams, j: str, k: str, u, v):
    """Q_{j,k}(u, v) as a sympy expression."""
    total = 0
    for (p, r), c in params.q(j, k).items():
        if c:
            total += params.domain.to_sympy(c) * u**p * v**r
    return total


@lru_cache(maxsize=None)
def _divided(qterms: tuple, us: tuple, v: Symbol):
    if len(us) == 1:
        return sum(c * us[0] ** p * v**r for (p, r), c in qterms)
    first = _divided(qterms, (us[0],) + us[2:], v)
    second = _divided(qterms, (us[1],) + us[2:], v)
    return expand(cancel((first - second) / (us[0] - us[1])))


def divided_Q(params: QParams, i: str, j: str, us: Sequence[Symbol], v: Symbol) -> Poly:
    """
    The divided difference Q_{i,j}(u_1, ..., u_t; v).

    For t = 1 this is Q_{i,j}(u_1, v); for t > 1 it is
    (Q(u_1, u_3, ..., u_t; v) - Q(u_2, u_3, ..., u_t; v)) / (u_1 - u_2).
    """
    if not us:
        raise ValueError("divided_Q needs at least one u variable")
    qterms = tuple(sorted((m, params.domain.to_sympy(c)) for m, c in params.q(i, j).items() if c))
    expr = _divided(qterms, tuple(us), v)
    gens = tuple(us) + (v,)
    return Poly(expr, *gens, domain="QQ")
