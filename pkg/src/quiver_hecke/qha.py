"""Exact arithmetic in quiver Hecke algebras.

Elements are linear combinations of normal-form terms e(w nu) tau_w x^a e(nu),
keyed by (w, a, nu) where w is a permutation in one-line notation, a is the
exponent vector of the x's on the source side and nu is the source word.
tau_w always means the product along the lexicographically smallest reduced
word of w.

Positions and tau indices are 0-based inside the library; the textual syntax
and the JSON format are 1-based.
"""

import logging
import threading
from itertools import product
from typing import Iterable, Mapping, Optional, Sequence

from sympy import Symbol, symbols
from sympy.polys.domains import QQ
from sympy.polys.domains.domain import Domain
from sympy.utilities.iterables import multiset_permutations

from quiver_hecke import perms
from quiver_hecke.cartan import (
    CartanDatum,
    GradeAssociator,
    RootVector,
    canonical_associator,
)
from quiver_hecke.errors import InternalRewriteFuel, WeightMismatch
from quiver_hecke.perms import Perm
from quiver_hecke.polys import QParams, default_qparams, qbar

logger = logging.getLogger(__name__)

Key = tuple[Perm, tuple[int, ...], tuple[str, ...]]
Terms = dict[Key, object]

DEFAULT_FUEL = 10**7


def words_of_weight(datum: CartanDatum, beta: RootVector) -> list[tuple[str, ...]]:
    """All words nu in I^beta in lexicographic order of index positions."""
    if any(b < 0 for b in beta.coeffs):
        raise WeightMismatch(f"weight {beta.coeffs} is not in the positive root lattice")
    letters: list[str] = []
    for label, b in zip(datum.index_set, beta.coeffs):
        letters.extend([label] * b)
    if not letters:
        return [()]
    order = {label: n for n, label in enumerate(datum.index_set)}
    letters.sort(key=order.__getitem__)
    return [tuple(w) for w in multiset_permutations(letters)]


def _add(acc: Terms, terms: Mapping[Key, object], scale=None) -> None:
    for key, c in terms.items():
        value = c if scale is None else c * scale
        new = acc.get(key)
        new = value if new is None else new + value
        if new:
            acc[key] = new
        else:
            acc.pop(key, None)


class KLRAlgebra:
    """
    The family of algebras R(beta) for one Cartan datum, associator and Q.

    Rewriting results are memoized per instance; the memo is safe to share
    between threads (reads are lock-free, writes take a lock).

    Args:
        datum: Cartan datum (possibly extended)
        associator: grade associator (defaults to the canonical one)
        params: the polynomials Q_{j,k} (defaults to default_qparams)
        domain: base field as a sympy domain (defaults to QQ)
        fuel: maximal number of rewriting steps per top-level product
    """

    def __init__(
        self,
        datum: CartanDatum,
        associator: Optional[GradeAssociator] = None,
        params: Optional[QParams] = None,
        domain: Optional[Domain] = None,
        fuel: int = DEFAULT_FUEL,
    ):
        self.datum = datum
        self.domain = domain or (params.domain if params is not None else QQ)
        self.lam = associator or canonical_associator(datum)
        self.params = params or default_qparams(datum, self.domain)
        self.fuel = fuel
        self._qbar = {pair: qbar(q) for pair, q in self.params.table.items()}
        self._x_memo: dict = {}
        self._tau_memo: dict = {}
        self._lock = threading.Lock()
        self._local = threading.local()

    # ----- identity of the algebra -----

    def key(self) -> tuple:
        return (repr(self.datum.to_dict()), self.lam.matrix, self.params.key(), str(self.domain))

    def same_as(self, other: "KLRAlgebra") -> bool:
        return self is other or self.key() == other.key()

    def with_associator(self, associator: GradeAssociator) -> "KLRAlgebra":
        """Same relations with a different grading."""
        return KLRAlgebra(self.datum, associator, self.params, self.domain, self.fuel)

    def __repr__(self) -> str:
        return f"KLRAlgebra({self.datum.index_set}, {self.lam.name}, {self.domain})"

    # ----- gradings -----

    def deg_x(self, letter: str) -> int:
        return self.datum.form(letter, letter)

    def deg_tau(self, rho: Sequence[str], l: int) -> int:
        """deg tau_l e(rho) = lambda(alpha_{rho_{l+1}}, alpha_{rho_l})."""
        return self.lam.value(rho[l + 1], rho[l])

    def tau_degree(self, w: Perm, nu: Sequence[str]) -> int:
        total = 0
        rho = tuple(nu)
        for l in reversed(perms.lexmin_word(w)):
            total += self.deg_tau(rho, l)
            rho = perms.act(perms.transposition(l, len(rho)), rho)
        return total

    def term_degree(self, key: Key) -> int:
        w, a, nu = key
        return self.tau_degree(w, nu) + sum(e * self.deg_x(nu[k]) for k, e in enumerate(a))

    # ----- rewriting core -----

    def _spend(self) -> None:
        used = getattr(self._local, "used", 0) + 1
        self._local.used = used
        if used > self.fuel:
            raise InternalRewriteFuel(f"rewriting exceeded {self.fuel} steps")

    def _reset_fuel(self) -> None:
        self._local.used = 0

    def x_left(self, m: int, key: Key) -> Terms:
        """Normal form of x_m * (tau_w x^a e(nu))."""
        w, a, nu = key
        if all(v == k for k, v in enumerate(w)):
            exps = list(a)
            exps[m] += 1
            return {(w, tuple(exps), nu): self.domain.one}
        memo_key = (m, key)
        cached = self._x_memo.get(memo_key)
        if cached is not None:
            return cached
        self._spend()
        l = perms.lexmin_word(w)[0]
        rest = perms.left_multiply(l, w)
        rho = perms.act(rest, nu)
        out: Terms = {}
        swapped = l + 1 if m == l else l if m == l + 1 else m
        for k2, c in self.x_left(swapped, (rest, a, nu)).items():
            _add(out, self.tau_left(l, k2), c)
        if rho[l] == rho[l + 1] and m in (l, l + 1):
            sign = -self.domain.one if m == l else self.domain.one
            _add(out, {(rest, a, nu): sign})
        with self._lock:
            self._x_memo[memo_key] = out
        return out

    def tau_left(self, l: int, key: Key) -> Terms:
        """Normal form of tau_l * (tau_w x^a e(nu))."""
        memo_key = (l, key)
        cached = self._tau_memo.get(memo_key)
        if cached is not None:
            return cached
        self._spend()
        w, a, nu = key
        one = self.domain.one
        out: Terms = {}
        if not perms.is_left_descent(l, w):
            v = perms.left_multiply(l, w)
            word = (l,) + perms.lexmin_word(w)
            target = perms.lexmin_word(v)
            out[(v, a, nu)] = one
            if word != target:
                _, corr = self._rewrite(word, target, a, nu)
                _add(out, corr)
        else:
            final, corr = self._rewrite(perms.lexmin_word(w), (l,), a, nu)
            tail = final[1:]
            n = len(nu)
            rho = perms.act(perms.from_word(tail, n), nu)
            base = self.word_nf(tail, a, nu)
            for (p, r), c in self.params.q(rho[l], rho[l + 1]).items():
                if not c:
                    continue
                exps = [0] * n
                exps[l] += p
                exps[l + 1] += r
                _add(out, self.poly_left({tuple(exps): c}, base))
            for k2, c in corr.items():
                _add(out, self.tau_left(l, k2), c)
        with self._lock:
            self._tau_memo[memo_key] = out
        return out

    def _rewrite(
        self, word: tuple[int, ...], prefix: tuple[int, ...], a: tuple[int, ...], nu: tuple
    ) -> tuple[tuple[int, ...], Terms]:
        """Move a reduced word to one starting with prefix; tau_word = tau_final + corrections."""
        n = len(nu)
        current = tuple(word)
        corrections: Terms = {}
        for move in perms.move_sequence(current, prefix):
            pos, old, new = move
            if len(old) == 3:
                k = min(old)
                suffix = current[pos + 3:]
                rho = perms.act(perms.from_word(suffix, n), nu)
                if rho[k] == rho[k + 2]:
                    sign = -self.domain.one if old == (k, k + 1, k) else self.domain.one
                    monos = {}
                    for (r, q, s), c in self._qbar[(rho[k], rho[k + 1])].items():
                        exps = [0] * n
                        exps[k] += r
                        exps[k + 1] += q
                        exps[k + 2] += s
                        monos[tuple(exps)] = c * sign
                    inner = self.poly_left(monos, self.word_nf(suffix, a, nu))
                    _add(corrections, self.apply_word(current[:pos], inner))
            current = perms.apply_move(current, move)
        return current, corrections

    def poly_left(
        self, monos: Mapping[tuple[int, ...], object], terms: Mapping[Key, object]
    ) -> Terms:
        """Left multiplication by a polynomial in the x's given as {exponents: coeff}."""
        out: Terms = {}
        for exps, coeff in monos.items():
            if not coeff:
                continue
            current: Terms = dict(terms)
            for m, e in enumerate(exps):
                for _ in range(e):
                    nxt: Terms = {}
                    for k2, c in current.items():
                        _add(nxt, self.x_left(m, k2), c)
                    current = nxt
            _add(out, current, coeff)
        return out

    def apply_word(self, word: Sequence[int], terms: Mapping[Key, object]) -> Terms:
        """Left multiplication by tau_{l1} ... tau_{lr} (applied right to left)."""
        current: Terms = dict(terms)
        for l in reversed(tuple(word)):
            nxt: Terms = {}
            for k2, c in current.items():
                _add(nxt, self.tau_left(l, k2), c)
            current = nxt
        return current

    def word_nf(self, word: Sequence[int], a: tuple[int, ...], nu: tuple) -> Terms:
        start = {(perms.identity(len(nu)), tuple(a), tuple(nu)): self.domain.one}
        return self.apply_word(word, start)

    def multiply_keys(self, left: Key, right: Key) -> Terms:
        """Normal form of a product of two normal-form terms."""
        w1, a1, nu1 = left
        w2, a2, nu2 = right
        if perms.act(w2, nu2) != tuple(nu1):
            return {}
        current = self.poly_left({a1: self.domain.one}, {right: self.domain.one})
        return self.apply_word(perms.lexmin_word(w1), current)

    # ----- generators -----

    def words(self, beta: RootVector) -> list[tuple[str, ...]]:
        return words_of_weight(self.datum, beta)

    def element(self, terms: Mapping[Key, object], beta: RootVector) -> "AlgebraElement":
        return AlgebraElement(self, beta, terms)

    def e(self, nu: Sequence[str]) -> "AlgebraElement":
        nu = tuple(nu)
        n = len(nu)
        beta = self.datum.weight_of_word(nu)
        return AlgebraElement(self, beta, {(perms.identity(n), (0,) * n, nu): self.domain.one})

    def unit(self, beta: RootVector) -> "AlgebraElement":
        n = beta.height
        terms = {(perms.identity(n), (0,) * n, nu): self.domain.one for nu in self.words(beta)}
        return AlgebraElement(self, beta, terms)

    def x(self, k: int, beta: RootVector) -> "AlgebraElement":
        """x_k summed over all idempotents of R(beta); k is 0-based."""
        n = beta.height
        if not 0 <= k < n:
            raise WeightMismatch(f"x index {k + 1} outside 1..{n}")
        terms = {}
        for nu in self.words(beta):
            a = [0] * n
            a[k] = 1
            terms[(perms.identity(n), tuple(a), nu)] = self.domain.one
        return AlgebraElement(self, beta, terms)

    def tau(self, l: int, beta: RootVector) -> "AlgebraElement":
        """tau_l summed over all idempotents of R(beta); l is 0-based."""
        n = beta.height
        if not 0 <= l < n - 1:
            raise WeightMismatch(f"tau index {l + 1} outside 1..{n - 1}")
        s = perms.transposition(l, n)
        terms = {(s, (0,) * n, nu): self.domain.one for nu in self.words(beta)}
        return AlgebraElement(self, beta, terms)

    def scalar(self, value, beta: RootVector) -> "AlgebraElement":
        return self.unit(beta) * self.domain.convert(value)


class AlgebraElement:
    """A normal-form element of R(beta); immutable once built."""

    __slots__ = ("algebra", "weight", "terms")

    def __init__(self, algebra: KLRAlgebra, weight: RootVector, terms: Mapping[Key, object]):
        self.algebra = algebra
        self.weight = weight
        self.terms: Terms = {k: c for k, c in terms.items() if c}

    def _check(self, other: "AlgebraElement") -> None:
        if not self.algebra.same_as(other.algebra) or self.weight != other.weight:
            raise WeightMismatch(
                f"cannot combine elements of weights {self.weight.coeffs} and {other.weight.coeffs}"
            )

    def __add__(self, other: "AlgebraElement") -> "AlgebraElement":
        self._check(other)
        out = dict(self.terms)
        _add(out, other.terms)
        return AlgebraElement(self.algebra, self.weight, out)

    def __neg__(self) -> "AlgebraElement":
        return AlgebraElement(self.algebra, self.weight, {k: -c for k, c in self.terms.items()})

    def __sub__(self, other: "AlgebraElement") -> "AlgebraElement":
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, AlgebraElement):
            return multiply(self, other)
        c = self.algebra.domain.convert(other)
        return AlgebraElement(self.algebra, self.weight, {k: v * c for k, v in self.terms.items()})

    def __rmul__(self, other):
        return self * other

    def __eq__(self, other) -> bool:
        if not isinstance(other, AlgebraElement):
            return NotImplemented
        return self.weight == other.weight and (self - other).is_zero()

    def __hash__(self):
        return hash((self.weight, frozenset(self.terms)))

    def is_zero(self) -> bool:
        return not self.terms

    def degrees(self) -> set[int]:
        return {self.algebra.term_degree(k) for k in self.terms}

    def is_homogeneous(self) -> bool:
        return len(self.degrees()) <= 1

    def degree(self) -> Optional[int]:
        degs = self.degrees()
        if len(degs) > 1:
            raise ValueError(f"element is not homogeneous: degrees {sorted(degs)}")
        return next(iter(degs), None)

    def to_dict(self) -> list[dict]:
        """JSON term array with 1-based one-line permutations."""
        out = []
        for (w, a, nu), c in sorted(self.terms.items(), key=lambda kv: _sort_key(kv[0])):
            out.append({
                "coef": str(self.algebra.domain.to_sympy(c)),
                "w": [v + 1 for v in w],
                "a": list(a),
                "nu": list(nu),
            })
        return out

    @classmethod
    def from_dict(cls, algebra: KLRAlgebra, data: list[dict]) -> "AlgebraElement":
        terms: Terms = {}
        beta = None
        for item in data:
            nu = tuple(str(v) for v in item["nu"])
            beta = algebra.datum.weight_of_word(nu)
            key = (tuple(v - 1 for v in item["w"]), tuple(item["a"]), nu)
            _add(terms, {key: algebra.domain.from_sympy(_rational(item["coef"]))})
        if beta is None:
            raise ValueError("cannot infer the weight of an empty term array")
        return cls(algebra, beta, terms)

    def __str__(self) -> str:
        return render(self)

    def __repr__(self) -> str:
        return f"AlgebraElement({render(self)})"


def _rational(text: str):
    from sympy import Rational

    return Rational(text)


def _sort_key(key: Key):
    w, a, nu = key
    return (nu, perms.length(w), w, a)


def render(element: AlgebraElement) -> str:
    """Human readable normal form, e.g. '(x1 + x2) e(1,2)'."""
    if element.is_zero():
        return "0"
    groups: dict[tuple, dict] = {}
    for (w, a, nu), c in element.terms.items():
        groups.setdefault((nu, w), {})[a] = c
    n = element.weight.height
    xs = symbols(f"x1:{n + 1}") if n else ()
    parts = []
    for (nu, w) in sorted(groups, key=lambda g: (g[0], perms.length(g[1]), g[1])):
        poly = 0
        for a, c in groups[(nu, w)].items():
            mono = element.algebra.domain.to_sympy(c)
            for k, e in enumerate(a):
                mono = mono * xs[k] ** e
            poly += mono
        word = perms.lexmin_word(w)
        taus = "".join(f"tau({l + 1})" for l in word)
        if poly == 1:
            coeff = ""
        elif poly.is_Atom:
            coeff = f"{poly} "
        else:
            coeff = f"({poly}) "
        prefix = f"{taus} " if taus else ""
        parts.append(f"{prefix}{coeff}e({','.join(nu)})")
    return " + ".join(parts)


def multiply(a: AlgebraElement, b: AlgebraElement) -> AlgebraElement:
    """
    Product of two elements of the same R(beta).

    Raises:
        WeightMismatch: if the weights or algebras differ
    """
    a._check(b)
    alg = a.algebra
    alg._reset_fuel()
    by_target: dict[tuple, list] = {}
    for key, c in b.terms.items():
        w, _, nu = key
        by_target.setdefault(perms.act(w, nu), []).append((key, c))
    out: Terms = {}
    for key1, c1 in a.terms.items():
        for key2, c2 in by_target.get(key1[2], ()):
            _add(out, alg.multiply_keys(key1, key2), c1 * c2)
    return AlgebraElement(alg, a.weight, out)


def product_of(factors: Iterable[AlgebraElement]) -> AlgebraElement:
    factors = list(factors)
    if not factors:
        raise ValueError("empty product needs a weight; use KLRAlgebra.unit")
    result = factors[0]
    for f in factors[1:]:
        result = multiply(result, f)
    return result


def normal_form(expr, beta: RootVector, algebra: KLRAlgebra) -> AlgebraElement:
    """Normal form of a textual expression or of an element."""
    if isinstance(expr, AlgebraElement):
        if expr.weight != beta:
            raise WeightMismatch("element weight differs from beta")
        return multiply(algebra.unit(beta), expr)
    from quiver_hecke.parser import element_from_text

    return element_from_text(expr, beta, algebra)


def intertwiner(k: int, beta: RootVector, algebra: KLRAlgebra) -> AlgebraElement:
    """phi_k: (tau_k (x_k - x_{k+1}) + 1) e(nu) when nu_k = nu_{k+1}, tau_k e(nu) otherwise."""
    n = beta.height
    if not 0 <= k < n - 1:
        raise WeightMismatch(f"intertwiner index {k + 1} outside 1..{n - 1}")
    s = perms.transposition(k, n)
    one = algebra.domain.one
    terms: Terms = {}
    ident = perms.identity(n)
    for nu in algebra.words(beta):
        if nu[k] == nu[k + 1]:
            a1 = [0] * n
            a1[k] = 1
            a2 = [0] * n
            a2[k + 1] = 1
            # tau_k x_k e(nu) and tau_k x_{k+1} e(nu) are already normal terms
            _add(terms, {
                (s, tuple(a1), nu): one,
                (s, tuple(a2), nu): -one,
                (ident, (0,) * n, nu): one,
            })
        else:
            _add(terms, {(s, (0,) * n, nu): one})
    return AlgebraElement(algebra, beta, terms)


def intertwiner_w(
    w: Perm, beta: RootVector, algebra: KLRAlgebra, word: Optional[Sequence[int]] = None
) -> AlgebraElement:
    """phi_w along a reduced word of w (the lexmin word unless one is given)."""
    word = perms.lexmin_word(tuple(w)) if word is None else tuple(word)
    result = algebra.unit(beta)
    for l in reversed(word):
        result = multiply(intertwiner(l, beta, algebra), result)
    return result


def central_p(i: str, beta: RootVector, algebra: KLRAlgebra) -> AlgebraElement:
    """The central element sum_nu (prod_{nu_a = i} x_a) e(nu)."""
    n = beta.height
    terms: Terms = {}
    for nu in algebra.words(beta):
        a = tuple(1 if letter == i else 0 for letter in nu)
        terms[(perms.identity(n), a, nu)] = algebra.domain.one
    return AlgebraElement(algebra, beta, terms)


def graded_dimension(
    algebra: KLRAlgebra, nu: Sequence[str], nu2: Sequence[str], ceiling: int
) -> dict[int, int]:
    """Graded dimension of e(nu) R e(nu2) in degrees <= ceiling, counted on PBW terms."""
    nu, nu2 = tuple(nu), tuple(nu2)
    n = len(nu)
    out: dict[int, int] = {}
    for w in perms.all_perms(n):
        w = tuple(w)
        if perms.act(w, nu2) != nu:
            continue
        base = algebra.tau_degree(w, nu2)
        steps = [algebra.deg_x(letter) for letter in nu2]
        bound = [max(0, (ceiling - base) // s) if s > 0 else 0 for s in steps]
        for a in product(*(range(b + 1) for b in bound)):
            d = base + sum(e * s for e, s in zip(a, steps))
            if d <= ceiling:
                out[d] = out.get(d, 0) + 1
    return dict(sorted(out.items()))


def poly_element(
    algebra: KLRAlgebra, poly_terms: Mapping[tuple[int, ...], object], nu: Sequence[str]
) -> AlgebraElement:
    """sum c_a x^a e(nu) from {exponents: coeff}."""
    nu = tuple(nu)
    n = len(nu)
    terms = {(perms.identity(n), tuple(a), nu): c for a, c in poly_terms.items()}
    return AlgebraElement(algebra, algebra.datum.weight_of_word(nu), terms)


def sympy_poly_element(
    algebra: KLRAlgebra, poly, gens: Sequence[Symbol], positions: Sequence[int], nu: Sequence[str]
) -> AlgebraElement:
    """Substitute x_{positions[t]} for gens[t] in a sympy Poly and attach e(nu)."""
    n = len(nu)
    terms: dict[tuple[int, ...], object] = {}
    for monom, coeff in poly.terms():
        a = [0] * n
        for pos, e in zip(positions, monom):
            a[pos] += e
        key = tuple(a)
        value = algebra.domain.from_sympy(coeff)
        terms[key] = terms.get(key, algebra.domain.zero) + value
    return poly_element(algebra, terms, nu)
