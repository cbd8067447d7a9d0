"""Named modules: one-letter convolutions, simple powers, determinantial modules,
the braiders C+- and the truncated affinizations used by the R-matrix code.

Affinizations are stored as finite modules over k[z]/z^N: a GradedModule whose
``central`` entry is the nilpotent operator z.
"""

import logging
import re
from dataclasses import dataclass
from typing import Optional

from quiver_hecke import linalg, perms
from quiver_hecke.cartan import CartanDatum, extend_cartan, extended_label, lambda_pm
from quiver_hecke.characters import half
from quiver_hecke.convolution import convolution_power, convolution_product, homogeneous_parts
from quiver_hecke.errors import HypothesisFailed, ParseError, UnknownGenerator
from quiver_hecke.gmod import (
    E_i_star,
    GradedModule,
    dual_star,
    one_letter,
    quotient,
    shift,
    unit_module,
)
from quiver_hecke.presentation import cyclic, finite_from_presentation
from quiver_hecke.qha import AlgebraElement, KLRAlgebra, poly_element
from quiver_hecke.semisimple import head_report, is_simple, semisimple_head

logger = logging.getLogger(__name__)

DEFAULT_TRUNC = 4
AFFINE_LABELS = ("L_i_z", "det_icj", "cyc_ic_a")


def extended_algebra(datum: CartanDatum, i: str, sign: str, **kwargs) -> KLRAlgebra:
    """R+ or R-: the datum extended at i, graded by lambda+ or lambda-."""
    ext = extend_cartan(datum, i, sign)
    return KLRAlgebra(ext, lambda_pm(ext, i, sign), **kwargs)


# ----- finite modules -----


def kato_module(alg: KLRAlgebra, word) -> GradedModule:
    """<nu_1> o ... o <nu_n>."""
    word = tuple(word)
    if not word:
        return unit_module(alg)
    M = convolution_product([one_letter(alg, j) for j in word])
    M.name = f"<{'|'.join(word)}>"
    return M


def simple_power(alg: KLRAlgebra, i: str, n: int) -> GradedModule:
    """<i^n> = q_i^{n(n-1)/2} <i>^{o n}, the self-dual simple of dimension n!."""
    if n < 1:
        raise ValueError("n must be at least 1")
    M = shift(convolution_power(one_letter(alg, i), n), alg.datum.d(i) * n * (n - 1) // 2)
    M.name = f"<{i}^{n}>"
    return M


def self_dual_shift(M: GradedModule):
    """The s with q^s M self-dual on characters, for M known to be self-dual up to shift."""
    if M.is_zero():
        return half(0)
    D = dual_star(M)
    word = M.words[0]
    top = max(d for w, d in zip(M.words, M.degrees) if w == word)
    top_dual = max(d for w, d in zip(D.words, D.degrees) if w == word)
    s = half(top_dual - top) / 2
    if shift(M, s).character() != dual_star(shift(M, s)).character():
        raise HypothesisFailed(f"{M.name} is not self-dual up to a shift")
    return s


def normalized(M: GradedModule, name: Optional[str] = None) -> GradedModule:
    out = shift(M, self_dual_shift(M))
    out.name = name or M.name
    return out


def head_module(alg: KLRAlgebra, word, self_dual: bool = True,
                name: Optional[str] = None) -> GradedModule:
    """
    The simple head of <nu_1> o ... o <nu_n>, moved to its self-dual grading unless
    ``self_dual`` is off (then it keeps the degrees of the quotient map).

    Raises:
        HypothesisFailed: when the head is not simple; the message lists its factors
    """
    word = tuple(word)
    name = name or f"hd<{''.join(word)}>"
    K = kato_module(alg, word)
    H = semisimple_head(K)
    if not is_simple(H):
        report = head_report(K)
        factors = ", ".join(f"{S.name}^({m})" for S, m in report.factors)
        raise HypothesisFailed(f"{name} is not simple: {factors}")
    if not self_dual:
        H.name = name
        return H
    return normalized(H, name)


def _tau_e(alg: KLRAlgebra, l: int, nu) -> AlgebraElement:
    n = len(nu)
    return alg.element({(perms.transposition(l, n), (0,) * n, tuple(nu)): alg.domain.one},
                       alg.datum.weight_of_word(nu))


def _x_power(alg: KLRAlgebra, k: int, power: int, nu) -> AlgebraElement:
    a = [0] * len(nu)
    a[k] = power
    return poly_element(alg, {tuple(a): alg.domain.one}, nu)


def cusp_c(alg: KLRAlgebra, i: str, j: str) -> int:
    if i == j:
        raise ValueError("determinantial modules need j != i")
    return -alg.datum.c(i, j)


def _det_presentation(alg: KLRAlgebra, i: str, j: str, trunc: Optional[int]):
    c = cusp_c(alg, i, j)
    nu = (i,) * c + (j,)
    rels = [_tau_e(alg, k, nu) for k in range(c)]
    central = None
    name = f"<{i}^{c}{j}>"
    if trunc is None:
        rels.append(_x_power(alg, c, 1, nu))
    else:
        rels.append(_x_power(alg, c, trunc, nu))
        central = {"z": (_x_power(alg, c, 1, nu), alg.deg_x(j))}
        name = f"<{i}^{c}{j}>_z"
    return cyclic(alg, nu, rels, name, central=central)


def determinantial(alg: KLRAlgebra, i: str, j: str) -> GradedModule:
    """
    <i^c j> with c = -c_ij, from its cyclic presentation

        R e(i^c j) / (tau_1 e, ..., tau_c e, x_{c+1} e).
    """
    return normalized(determinantial_raw(alg, i, j))


def build_Cpm(alg: KLRAlgebra, i: str, sign: str) -> GradedModule:
    """C+ = <i i+> (head of <i> o <i+>) or C- = <i- i> (head of <i-> o <i>)."""
    datum = alg.datum
    if datum.ext_i != i or datum.ext_sign != sign:
        raise ValueError(f"algebra is not extended at ({i}, {sign})")
    ext = extended_label(i, sign)
    word = (i, ext) if sign == "+" else (ext, i)
    # degree 0, so that <i> o <i+> -> C+ is a degree 0 surjection
    C = semisimple_head(kato_module(alg, word))
    C.name = f"C{sign}"
    logger.debug("C%s: dim %d on %s", sign, C.dim, C.support())
    return C


# ----- affinizations -----


@dataclass
class AffineModule:
    """A catalogued affinization truncated to k[z]/z^N."""

    module: GradedModule
    label: str
    trunc: int
    var: str = "z"

    @property
    def z(self):
        return self.module.central[self.var][0]

    @property
    def z_degree(self):
        return self.module.central[self.var][1]

    @property
    def name(self) -> str:
        return self.module.name

    def fiber(self) -> GradedModule:
        """M / zM."""
        image = [col for _, col in sorted(linalg.columns_of(self.z).items())]
        F = quotient(self.module, homogeneous_parts(self.module, image), f"{self.name}|z=0")
        F.central = {}
        return F

    def rank(self) -> int:
        return self.fiber().dim

    def is_free(self) -> bool:
        """dim = N rank and z^{N-1} != 0 on the generators."""
        top = self.z
        for _ in range(self.trunc - 2):
            top = top.matmul(self.z)
        return self.module.dim == self.trunc * self.rank() and linalg.rank(top) == self.rank()

    def check(self) -> list[str]:
        """Violations of z commuting with the action, z^N = 0 and freeness."""
        problems = []
        z = self.z
        for name, k, g in self.module.generators():
            if g.matmul(z) != z.matmul(g):
                problems.append(f"z does not commute with {name}{k + 1}")
        power = z
        for _ in range(self.trunc - 1):
            power = power.matmul(z)
        if not linalg.is_zero(power):
            problems.append("z^N != 0")
        if not self.is_free():
            problems.append("not free over k[z]/z^N")
        return problems

    def renamed(self, var: str) -> "AffineModule":
        """Same module with the parameter called var."""
        M = self.module.transform(lambda m: m)
        M.central = {var: self.module.central[self.var]}
        M.name = self.module.name.replace(f"_{self.var}", f"_{var}")
        return AffineModule(M, self.label, self.trunc, var)


def L_i_z(alg: KLRAlgebra, i: str, trunc: int = DEFAULT_TRUNC, var: str = "z") -> AffineModule:
    """<i>_z = R(alpha_i) = k[x_1] cut at x_1^N, with z acting by x_1."""
    if trunc < 2:
        raise ValueError("truncation must be at least 2")
    K = alg.domain
    step = alg.deg_x(i)
    x1 = linalg.matrix({k + 1: {k: K.one} for k in range(trunc - 1)}, (trunc, trunc), K)
    M = GradedModule(alg, alg.datum.root(i), [(i,)] * trunc, [step * k for k in range(trunc)],
                     [x1], [], f"<{i}>_{var}", {var: (x1, step)})
    return AffineModule(M, "L_i_z", trunc, var)


def det_icj(alg: KLRAlgebra, i: str, j: str, trunc: int = DEFAULT_TRUNC,
            var: str = "z") -> AffineModule:
    """<i^c j>_{z_j}: the same presentation with z = x_{c+1} free, cut at z^N."""
    if trunc < 2:
        raise ValueError("truncation must be at least 2")
    P = _det_presentation(alg, i, j, trunc)
    M = finite_from_presentation(P)
    s = self_dual_shift(determinantial_raw(alg, i, j))
    M = shift(M, s)
    M.name = f"<{i}^{cusp_c(alg, i, j)}{j}>_{var}"
    if var != "z":
        M.central = {var: M.central.pop("z")}
    return AffineModule(M, "det_icj", trunc, var)


def determinantial_raw(alg: KLRAlgebra, i: str, j: str) -> GradedModule:
    return finite_from_presentation(_det_presentation(alg, i, j, None))


def cyc_ic_z(alg: KLRAlgebra, i: str, j: str, trunc: int = DEFAULT_TRUNC,
             var: str = "z") -> AffineModule:
    """<i^c>_{z_j} = E*_j(<i^c j>_{z_j})."""
    A = det_icj(alg, i, j, trunc, var)
    M = E_i_star(A.module, j)
    M.name = f"<{i}^{cusp_c(alg, i, j)}>_{var}"
    return AffineModule(M, "cyc_ic_a", trunc, var)


def cyc_ic_a(alg: KLRAlgebra, i: str, c: int) -> GradedModule:
    """
    The cyclotomic quotient R(c alpha_i) e(i^c) / (tau_k e (k < c), x_c^c e) over A = k.

    This is the only homogeneous quasi-monic choice a(z) = z^c with scalar coefficients.
    """
    if c < 1:
        raise ValueError("c must be at least 1")
    nu = (i,) * c
    rels = [_tau_e(alg, k, nu) for k in range(c - 1)]
    rels.append(_x_power(alg, c - 1, c, nu))
    M = finite_from_presentation(cyclic(alg, nu, rels, f"<{i}^{c}>_a"))
    return normalized(M)


def affinize(alg: KLRAlgebra, label: str, params: dict, trunc: int = DEFAULT_TRUNC,
             var: str = "z") -> AffineModule:
    """
    Dispatch to a catalogued affinization.

    Raises:
        UnknownGenerator: for labels outside the catalogue
    """
    if label == "L_i_z":
        return L_i_z(alg, params["i"], trunc, var)
    if label == "det_icj":
        return det_icj(alg, params["i"], params["j"], trunc, var)
    if label == "cyc_ic_a":
        return cyc_ic_z(alg, params["i"], params["j"], trunc, var)
    raise UnknownGenerator(f"no catalogued affinization {label!r}; choose from {AFFINE_LABELS}")


# ----- module specs -----

_SPEC = re.compile(
    r"^(?:(?P<C>C[+-])"
    r"|(?P<kind>hd|det)?<(?P<body>[^<>]*)>"
    r"|(?P<power>[^\s^<>]+)\^(?P<n>\d+)"
    r"|(?P<letter>[^\s^<>|,]+))$"
)


def _letters(body: str, labels) -> tuple[str, ...]:
    body = body.strip()
    for sep in ("|", ","):
        if sep in body:
            return tuple(part.strip() for part in body.split(sep))
    # unseparated: longest label first, so "11+" reads as 1, 1+
    out, rest = [], body
    ordered = sorted(labels, key=len, reverse=True)
    while rest:
        head = next((j for j in ordered if rest.startswith(j)), rest[0])
        out.append(head)
        rest = rest[len(head):]
    return tuple(out)


def module_from_spec(alg: KLRAlgebra, spec: str) -> GradedModule:
    """
    Resolve a textual module name.

    Forms: ``1`` or ``<1>`` (one letter), ``<1|2|1>`` (convolution of letters),
    ``hd<12>`` or ``hd<1,2>`` (self-dual head), ``1^3`` (simple power),
    ``det<1,2>`` (the determinantial <1^c 2>), ``C+`` and ``C-``.

    Raises:
        ParseError: on malformed specs or labels outside the algebra
    """
    text = spec.strip()
    m = _SPEC.match(text)
    if m is None:
        raise ParseError(f"cannot read module spec {spec!r}", 0)
    labels = alg.datum.index_set

    def check(word):
        for j in word:
            if j not in labels:
                raise ParseError(f"unknown index {j!r} in {spec!r}", max(text.find(j), 0))
        return word

    if m["C"]:
        sign = m["C"][1]
        if alg.datum.ext_sign != sign:
            raise ParseError(f"{m['C']} needs an algebra extended with sign {sign}", 0)
        return build_Cpm(alg, alg.datum.ext_i, sign)
    if m["letter"]:
        return one_letter(alg, check((m["letter"],))[0])
    if m["power"]:
        return simple_power(alg, check((m["power"],))[0], int(m["n"]))
    word = check(_letters(m["body"], labels))
    if not word:
        raise ParseError(f"empty word in {spec!r}", text.find("<") + 1)
    if m["kind"] == "hd":
        return head_module(alg, word)
    if m["kind"] == "det":
        if len(word) != 2:
            raise ParseError(f"det<i,j> takes two indices, got {len(word)}", text.find("<") + 1)
        return determinantial(alg, *word)
    if len(word) == 1:
        return one_letter(alg, word[0])
    return kato_module(alg, word)
