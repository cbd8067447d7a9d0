"""A small Grothendieck ring: words in simple classes with a central invertible [C].

An element is a dict mapping (word, c) to a Laurent coefficient, standing for
coefficient * [w_1][w_2]...[w_r] [C]^c. Products are brought to normal form by
rules that move one distinguished letter (the extended vertex) to the left.
"""

from dataclasses import dataclass, field

from quiver_hecke.characters import Laurent
from quiver_hecke.errors import UnknownGenerator

Element = dict[tuple[tuple[str, ...], int], Laurent]

ONE = Laurent.monomial(0)


def _add_term(acc: Element, key, coeff: Laurent) -> None:
    total = acc.get(key, Laurent()) + coeff
    if total.is_zero():
        acc.pop(key, None)
    else:
        acc[key] = total


@dataclass
class KClassRing:
    """
    Words over ``letters`` and powers of [C], with rewriting rules for x * plus.

    ``rules[x]`` lists (coefficient, word, c) so that
    [x][plus] = sum coefficient [word] [C]^c.
    """

    letters: tuple[str, ...]
    plus: str
    rules: dict[str, list[tuple[Laurent, tuple[str, ...], int]]] = field(default_factory=dict)

    def one(self) -> Element:
        return {((), 0): ONE}

    def scalar(self, coeff: Laurent) -> Element:
        return {} if coeff.is_zero() else {((), 0): coeff}

    def letter(self, x: str) -> Element:
        if x not in self.letters:
            raise UnknownGenerator(f"no simple class [{x}] in this ring")
        return {((x,), 0): ONE}

    def C(self, power: int = 1) -> Element:
        return {((), power): ONE}

    def add(self, *elements: Element) -> Element:
        out: Element = {}
        for element in elements:
            for key, coeff in element.items():
                _add_term(out, key, coeff)
        return out

    def scale(self, element: Element, coeff: Laurent) -> Element:
        out: Element = {}
        for key, c in element.items():
            _add_term(out, key, c * coeff)
        return out

    def mul(self, *elements: Element) -> Element:
        result = self.one()
        for element in elements:
            out: Element = {}
            for (w1, c1), a in result.items():
                for (w2, c2), b in element.items():
                    _add_term(out, (w1 + w2, c1 + c2), a * b)
            result = self.normal_form(out)
        return result

    def normal_form(self, element: Element) -> Element:
        """Rewrite until every occurrence of ``plus`` sits left of the other letters."""
        out: Element = {}
        work = list(element.items())
        while work:
            (word, c), coeff = work.pop()
            pos = self._first_inversion(word)
            if pos is None:
                _add_term(out, (word, c), coeff)
                continue
            x = word[pos]
            if x not in self.rules:
                raise UnknownGenerator(f"no rule for [{x}][{self.plus}]")
            head, tail = word[:pos], word[pos + 2:]
            for rc, rword, rpow in self.rules[x]:
                work.append(((head + tuple(rword) + tail, c + rpow), coeff * rc))
        return out

    def _first_inversion(self, word: tuple[str, ...]):
        for k in range(len(word) - 1):
            if word[k] != self.plus and word[k + 1] == self.plus:
                return k
        return None

    def equal(self, a: Element, b: Element) -> bool:
        return not self.add(self.normal_form(a), self.scale(self.normal_form(b), -ONE))

    def render(self, element: Element) -> str:
        if not element:
            return "0"
        parts = []
        for (word, c), coeff in sorted(element.items(), key=lambda kv: (len(kv[0][0]), kv[0])):
            factors = "".join(f"[{x}]" for x in word)
            if c:
                factors += f"[C]^{c}"
            parts.append(f"({coeff}){factors or '1'}")
        return " + ".join(parts)
