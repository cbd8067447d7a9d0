"""Graded characters: Laurent polynomials in q^(1/2) attached to words."""

from dataclasses import dataclass, field
from typing import Iterable, Mapping, Optional

from sympy import Rational, Symbol, nsimplify
from sympy.polys.domains import QQ

from quiver_hecke import perms

q = Symbol("q")


def half(value) -> object:
    """Exact rational degree."""
    if isinstance(value, str):
        return QQ.from_sympy(Rational(value))
    return QQ.convert(value)


def floor_of(value) -> int:
    value = half(value)
    return int(value.numerator) // int(value.denominator)


@dataclass(frozen=True)
class Laurent:
    """Finite sum of c_d q^d with d in (1/2)Z and integer c_d."""

    coeffs: tuple[tuple[object, int], ...] = ()

    @classmethod
    def from_dict(cls, data: Mapping) -> "Laurent":
        clean = {}
        for d, c in data.items():
            d = half(d)
            if c:
                clean[d] = clean.get(d, 0) + int(c)
        return cls(tuple(sorted((d, c) for d, c in clean.items() if c)))

    @classmethod
    def monomial(cls, d, c: int = 1) -> "Laurent":
        return cls.from_dict({d: c})

    def as_dict(self) -> dict:
        return dict(self.coeffs)

    def __add__(self, other: "Laurent") -> "Laurent":
        out = self.as_dict()
        for d, c in other.coeffs:
            out[d] = out.get(d, 0) + c
        return Laurent.from_dict(out)

    def __neg__(self) -> "Laurent":
        return Laurent(tuple((d, -c) for d, c in self.coeffs))

    def __sub__(self, other: "Laurent") -> "Laurent":
        return self + (-other)

    def __mul__(self, other) -> "Laurent":
        if isinstance(other, int):
            return Laurent.from_dict({d: c * other for d, c in self.coeffs})
        out: dict = {}
        for d1, c1 in self.coeffs:
            for d2, c2 in other.coeffs:
                out[d1 + d2] = out.get(d1 + d2, 0) + c1 * c2
        return Laurent.from_dict(out)

    __rmul__ = __mul__

    def shift(self, d) -> "Laurent":
        d = half(d)
        return Laurent(tuple((e + d, c) for e, c in self.coeffs))

    def bar(self) -> "Laurent":
        """q -> q^{-1}."""
        return Laurent.from_dict({-d: c for d, c in self.coeffs})

    def at_one(self) -> int:
        return sum(c for _, c in self.coeffs)

    def is_zero(self) -> bool:
        return not self.coeffs

    def to_sympy(self):
        return sum((c * q ** nsimplify(QQ.to_sympy(d)) for d, c in self.coeffs), 0)

    def __str__(self) -> str:
        return str(self.to_sympy())

    def to_json(self) -> dict:
        return {str(QQ.to_sympy(d)): c for d, c in self.coeffs}


@dataclass
class QCharacter:
    """word -> graded dimension of the e(word) slice."""

    table: dict[tuple[str, ...], Laurent] = field(default_factory=dict)

    @classmethod
    def from_basis(cls, basis: Iterable[tuple[tuple[str, ...], object]]) -> "QCharacter":
        acc: dict[tuple[str, ...], dict] = {}
        for word, degree in basis:
            slot = acc.setdefault(tuple(word), {})
            d = half(degree)
            slot[d] = slot.get(d, 0) + 1
        return cls({w: Laurent.from_dict(c) for w, c in acc.items()})

    def _combine(self, other: "QCharacter", sign: int) -> dict:
        out = dict(self.table)
        for w, lp in other.table.items():
            out[w] = out.get(w, Laurent()) + (lp if sign > 0 else -lp)
        return {w: lp for w, lp in out.items() if not lp.is_zero()}

    def __add__(self, other: "QCharacter") -> "QCharacter":
        return type(self)(self._combine(other, 1))

    def __sub__(self, other: "QCharacter") -> "QCharacter":
        return KClass(self._combine(other, -1))

    def __eq__(self, other) -> bool:
        if not isinstance(other, QCharacter):
            return NotImplemented
        a = {w: lp for w, lp in self.table.items() if not lp.is_zero()}
        b = {w: lp for w, lp in other.table.items() if not lp.is_zero()}
        return a == b

    def shift(self, d) -> "QCharacter":
        return type(self)({w: lp.shift(d) for w, lp in self.table.items()})

    def truncate(self, upto) -> "QCharacter":
        """Terms of degree <= upto."""
        bound = half(upto)
        table = {}
        for w, lp in self.table.items():
            kept = Laurent(tuple((d, c) for d, c in lp.coeffs if d <= bound))
            if not kept.is_zero():
                table[w] = kept
        return type(self)(table)

    def scale(self, lp: Laurent) -> "QCharacter":
        return type(self)({w: v * lp for w, v in self.table.items() if not (v * lp).is_zero()})

    def dimension(self) -> int:
        return sum(lp.at_one() for lp in self.table.values())

    def is_nonnegative(self) -> bool:
        return all(c >= 0 for lp in self.table.values() for _, c in lp.coeffs)

    def words(self) -> list[tuple[str, ...]]:
        return sorted(w for w, lp in self.table.items() if not lp.is_zero())

    def to_dict(self) -> dict:
        """Convert to dictionary for JSON serialization."""
        return {",".join(w): lp.to_json() for w, lp in sorted(self.table.items())}

    @classmethod
    def from_dict(cls, data: dict) -> "QCharacter":
        return cls({
            tuple(k.split(",")) if k else (): Laurent.from_dict(v) for k, v in data.items()
        })

    def __str__(self) -> str:
        parts = [f"[{''.join(w)}]({lp})" for w, lp in sorted(self.table.items())]
        return " + ".join(parts) if parts else "0"


class KClass(QCharacter):
    """A Grothendieck-ring element in shuffle coordinates; coefficients may be negative."""


def shuffle_product(
    left: QCharacter, right: QCharacter, tau_degree, twist: Optional[object] = None
) -> QCharacter:
    """
    Quantum shuffle product of characters.

    ``tau_degree(sigma, word)`` returns deg tau_sigma e(word); ``twist`` is an
    optional extra overall shift.
    """
    out: dict[tuple[str, ...], Laurent] = {}
    for w1, lp1 in left.table.items():
        for w2, lp2 in right.table.items():
            word = tuple(w1) + tuple(w2)
            base = lp1 * lp2
            for sigma in perms.shuffles(len(w1), len(w2)):
                target = perms.act(sigma, word)
                term = base.shift(tau_degree(sigma, word))
                out[target] = out.get(target, Laurent()) + term
    result = QCharacter({w: lp for w, lp in out.items() if not lp.is_zero()})
    return result.shift(twist) if twist is not None else result
