"""Split codifferentials d = delta + mu + lambda + psi on V = M + W.

Components:
  delta  in Hom(W^2, W)    the bracket on W
  mu     in Hom(M^2, M)    the bracket on M
  lam    in Hom(MW, M)     the action of W on M
  psi    in Hom(W^2, M)    the cocycle

Linear maps of V are square matrices ``f`` with f(v_j) = sum_i f[i][j] v_i.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations, permutations

from . import gspace
from .cochain import Cochain, bracket
from .cohomology import Slice, hom_m, solve_in
from .gspace import GradedSpace, InputError
from ._linalg import rank
from .scalar import Poly, scalar_is_constant, scalar_is_zero, as_fraction

__all__ = [
    "ExtensionData",
    "ExtensionReport",
    "NotAnIdeal",
    "DiagonalAutomorphism",
    "split",
    "verify_extension",
    "apply_beta",
    "conjugate",
    "conjugate_cleared",
    "push_forward",
    "torus_moduli",
    "TorusClass",
    "pullback_diag",
    "pullback_diag_cleared",
    "pullback_general",
    "semidirect_witness_check",
    "solve_semidirect_linear",
    "identity_matrix",
    "beta_matrix",
    "determinant",
    "adjugate",
]


class NotAnIdeal(InputError):
    """The cochain maps MW or M^2 into W, so M would not be an ideal."""


COMPONENTS = ("delta", "mu", "lam", "psi")


def _component_of(space: GradedSpace, key) -> str | None:
    mono, t = key
    k, l = space.bidegree(mono)
    if len(mono) != 2:
        return None
    if t in space.module:
        return {(0, 2): "psi", (1, 1): "lam", (2, 0): "mu"}[(k, l)]
    return "delta" if k == 0 else None


def _check_component(name, c: Cochain, space):
    if c.space != space:
        raise InputError(f"{name} lives on a different space")
    for key in c.terms:
        got = _component_of(space, key)
        if got != name:
            raise InputError(f"{name} has a term {c.term_label(key)} outside its bidegree")
    if c.parities() - {1}:
        raise InputError(f"{name} must be odd")


@dataclass(frozen=True)
class ExtensionData:
    space: GradedSpace
    delta: Cochain
    mu: Cochain
    lam: Cochain
    psi: Cochain

    def __post_init__(self):
        if not self.space.split:
            raise InputError("extensions need a split space (M, W)")
        for name in COMPONENTS:
            _check_component(name, getattr(self, name), self.space)

    @classmethod
    def from_parts(cls, space, delta=None, mu=None, lam=None, psi=None):
        z = Cochain(space)
        return cls(space, delta or z, mu or z, lam or z, psi or z)

    @property
    def d(self) -> Cochain:
        return self.delta + self.mu + self.lam + self.psi

    def components(self) -> dict:
        return {n: getattr(self, n) for n in COMPONENTS}

    def replace(self, **parts) -> ExtensionData:
        data = self.components()
        data.update(parts)
        return ExtensionData(self.space, **data)

    def subs(self, assignment) -> ExtensionData:
        return ExtensionData(self.space, *(getattr(self, n).subs(assignment) for n in COMPONENTS))

    def __eq__(self, other):
        if not isinstance(other, ExtensionData):
            return NotImplemented
        return self.space == other.space and all(getattr(self, n) == getattr(other, n) for n in COMPONENTS)

    __hash__ = None

    def __str__(self):
        return "\n".join(f"{n:>5} = {getattr(self, n)}" for n in COMPONENTS)


def split(d: Cochain) -> ExtensionData:
    """Decompose a degree-2 odd cochain on a split space into its four components."""
    space = d.space
    if not space.split:
        raise InputError("split needs a space with a module part")
    if d.degrees() - {2}:
        raise InputError("split needs a degree-2 cochain")
    if d.parities() - {1}:
        raise InputError("split needs an odd cochain")
    parts = {n: {} for n in COMPONENTS}
    bad = []
    for key, c in d.terms.items():
        name = _component_of(space, key)
        if name is None:
            bad.append(d.term_label(key))
        else:
            parts[name][key] = c
    if bad:
        raise NotAnIdeal("terms map into W from a product involving M: " + ", ".join(bad))
    return ExtensionData(space, *(Cochain(space, parts[n]) for n in COMPONENTS))


@dataclass(frozen=True)
class ExtensionReport:
    cond_module: Cochain
    cond_compat: Cochain
    cond_cocycle: Cochain

    @property
    def ok(self) -> bool:
        return self.cond_module.is_zero() and self.cond_compat.is_zero() and self.cond_cocycle.is_zero()

    def constraints(self) -> list:
        """All residual coefficients; the extension holds exactly where they vanish."""
        out = []
        for c in (self.cond_module, self.cond_compat, self.cond_cocycle):
            out.extend(v for _, v in c.sorted_items())
        return out

    def __bool__(self):
        return self.ok


def verify_extension(e: ExtensionData, check_structures: bool = True) -> ExtensionReport:
    """Residuals of the three conditions for delta + mu + lam + psi to be a codifferential.

    cond_module  = [delta, lam] + 1/2 [lam, lam] + [mu, psi]
    cond_compat  = [mu, lam]
    cond_cocycle = [delta + lam, psi]
    """
    if check_structures:
        for name in ("delta", "mu"):
            if not bracket(getattr(e, name), getattr(e, name)).is_zero():
                raise InputError(f"{name} is not a codifferential")
    half = Fraction(1, 2)
    module = bracket(e.delta, e.lam) + bracket(e.lam, e.lam) * half + bracket(e.mu, e.psi)
    return ExtensionReport(module, bracket(e.mu, e.lam), bracket(e.delta + e.lam, e.psi))


def _check_beta(e_space, beta: Cochain):
    if beta.space != e_space:
        raise InputError("beta lives on a different space")
    for (mono, t), _ in beta.terms.items():
        if len(mono) != 1 or mono[0] in e_space.module or t not in e_space.module:
            raise InputError("beta must be a degree-1 map from W to M")
    if beta.parities() - {0}:
        raise InputError("beta must be even (parity preserving)")


def apply_beta(e: ExtensionData, beta: Cochain) -> ExtensionData:
    """Restricted equivalence: lam - [mu, beta] and psi - [delta + lam - 1/2 [mu, beta], beta]."""
    _check_beta(e.space, beta)
    mb = bracket(e.mu, beta)
    lam = e.lam - mb
    psi = e.psi - bracket(e.delta + e.lam - mb * Fraction(1, 2), beta)
    return e.replace(lam=lam, psi=psi)


def semidirect_witness_check(e: ExtensionData, beta: Cochain) -> bool:
    """Whether beta exhibits e as equivalent to a semidirect product."""
    _check_beta(e.space, beta)
    mb = bracket(e.mu, beta)
    return (e.psi - bracket(e.delta + e.lam - mb * Fraction(1, 2), beta)).is_zero()


def solve_semidirect_linear(e: ExtensionData):
    """Find beta with psi = [delta + lam, beta] when [mu, beta] vanishes for every beta.

    Returns a beta (particular solution) or None.  Raises when mu acts
    nontrivially on Hom(W, M), since the equation is then quadratic.
    """
    space = e.space
    basis = Slice.of(hom_m(0, 1), parity=0).basis(space)
    if any(not bracket(e.mu, b).is_zero() for b in basis):
        raise InputError("[mu, beta] does not vanish identically; use the cohomological criterion")
    return solve_in(lambda b: bracket(e.delta + e.lam, b), basis, e.psi)


# -- matrices and automorphisms --------------------------------------------


def identity_matrix(n: int) -> list:
    return [[Fraction(int(i == j)) for j in range(n)] for i in range(n)]


def beta_matrix(beta: Cochain, sign: int = 1) -> list:
    """Matrix of 1 + sign*beta for a degree-1 cochain beta."""
    n = beta.space.dim
    f = identity_matrix(n)
    for ((j,), i), c in beta.terms.items():
        f[i][j] = f[i][j] + c * sign
    return f


def _perm_sign(p) -> int:
    sign = 1
    p = list(p)
    for i in range(len(p)):
        while p[i] != i:
            j = p[i]
            p[i], p[j] = p[j], p[i]
            sign = -sign
    return sign


def determinant(f):
    n = len(f)
    total = Fraction(0)
    for p in permutations(range(n)):
        term = Fraction(_perm_sign(p))
        for i in range(n):
            x = f[i][p[i]]
            if scalar_is_zero(x):
                term = Fraction(0)
                break
            term = term * x
        if not scalar_is_zero(term):
            total = total + term
    return total


def _minor(f, r, c):
    return [[f[i][j] for j in range(len(f)) if j != c] for i in range(len(f)) if i != r]


def adjugate(f):
    n = len(f)
    if n == 1:
        return [[Fraction(1)]]
    return [[determinant(_minor(f, j, i)) * (-1) ** (i + j) for j in range(n)] for i in range(n)]


def _check_automorphism(space: GradedSpace, f):
    n = space.dim
    if len(f) != n or any(len(row) != n for row in f):
        raise InputError(f"automorphism must be a {n}x{n} matrix")
    for i in range(n):
        for j in range(n):
            if space.parities[i] != space.parities[j] and not scalar_is_zero(f[i][j]):
                raise InputError("automorphism must preserve parity")


def _image_of_word(space, f, word):
    """S(f) applied to the monomial ``word``: {monomial: coefficient}."""
    out = {(): Fraction(1)}
    for j in word:
        nxt = {}
        for mono, c in out.items():
            for i in range(space.dim):
                x = f[i][j]
                if scalar_is_zero(x):
                    continue
                normal = gspace.koszul_sign(list(mono) + [i], space)
                if normal is None:
                    continue
                s, m = normal
                val = nxt.get(m, Fraction(0)) + c * x * s
                if scalar_is_zero(val):
                    nxt.pop(m, None)
                else:
                    nxt[m] = val
        out = nxt
    return out


def _pullback(d: Cochain, f, finv):
    space = d.space
    table = d._by_monomial()
    monos = set()
    for deg in d.degrees():
        monos.update(gspace.monomial_basis(space, deg))
    acc = {}
    for mono in monos:
        value = {}
        for m, c in _image_of_word(space, f, mono).items():
            for t, e in table.get(m, ()):
                value[t] = value.get(t, Fraction(0)) + c * e
        for t, v in value.items():
            if scalar_is_zero(v):
                continue
            for s in range(space.dim):
                x = finv[s][t]
                if scalar_is_zero(x):
                    continue
                key = (mono, s)
                acc[key] = acc.get(key, Fraction(0)) + x * v
    return Cochain(space, acc)


def conjugate_cleared(d: Cochain, f):
    """(det f, det(f) * f^{-1} o d o S(f)) without dividing by the determinant."""
    _check_automorphism(d.space, f)
    det = determinant(f)
    if scalar_is_zero(det):
        raise InputError("automorphism is singular")
    return det, _pullback(d, f, adjugate(f))


def conjugate(d: Cochain, f) -> Cochain:
    """Pullback f^{-1} o d o S(f).  Needs a determinant that is a nonzero constant."""
    det, cleared = conjugate_cleared(d, f)
    if not scalar_is_constant(det):
        raise InputError("determinant is not constant; use conjugate_cleared")
    return cleared / as_fraction(det)


def push_forward(d: Cochain, f) -> Cochain:
    """f o d o S(f)^{-1}, the structure transported along f.

    With f = 1 + beta this is the restricted equivalence computed by
    :func:`apply_beta`, since (1 + beta)^{-1} = 1 - beta.
    """
    _check_automorphism(d.space, f)
    det = determinant(f)
    if scalar_is_zero(det) or not scalar_is_constant(det):
        raise InputError("push_forward needs a nonzero constant determinant")
    det = as_fraction(det)
    finv = [[x / det for x in row] for row in adjugate(f)]
    return _pullback(d, finv, f)


@dataclass(frozen=True)
class DiagonalAutomorphism:
    """Block diagonal automorphism: one block on M and one on W (in basis order)."""

    m_block: tuple
    w_block: tuple

    def __post_init__(self):
        object.__setattr__(self, "m_block", tuple(tuple(r) for r in self.m_block))
        object.__setattr__(self, "w_block", tuple(tuple(r) for r in self.w_block))

    def matrix(self, space: GradedSpace) -> list:
        m, w = space.m_indices, space.w_indices
        if len(self.m_block) != len(m) or len(self.w_block) != len(w):
            raise InputError("block sizes do not match the split")
        f = [[Fraction(0)] * space.dim for _ in range(space.dim)]
        for a, i in enumerate(m):
            for b, j in enumerate(m):
                f[i][j] = self.m_block[a][b]
        for a, i in enumerate(w):
            for b, j in enumerate(w):
                f[i][j] = self.w_block[a][b]
        _check_automorphism(space, f)
        for block in (self.m_block, self.w_block):
            if block and scalar_is_zero(determinant([list(r) for r in block])):
                raise InputError("diagonal block is singular")
        return f

    def inverse_matrix(self, space):
        f = self.matrix(space)
        det = determinant(f)
        if not scalar_is_constant(det):
            raise InputError("determinant is not constant")
        adj = adjugate(f)
        return [[x / as_fraction(det) for x in row] for row in adj]


def pullback_diag(e: ExtensionData, g: DiagonalAutomorphism) -> ExtensionData:
    return split(conjugate(e.d, g.matrix(e.space)))


def pullback_diag_cleared(e: ExtensionData, g: DiagonalAutomorphism):
    """(det g, components of det(g) * g^*(d)); valid for symbolic g."""
    det, d = conjugate_cleared(e.d, g.matrix(e.space))
    return det, split(d)


def pullback_general(e: ExtensionData, g: DiagonalAutomorphism, beta: Cochain) -> ExtensionData:
    """Pullback along h = g exp(beta): g^* first, then the beta step.

    Components come out as g^*(lam) + [mu', beta] and
    g^*(psi) + [delta' + lam' - 1/2 [mu', beta], beta].
    """
    _check_beta(e.space, beta)
    return split(conjugate(conjugate(e.d, g.matrix(e.space)), beta_matrix(beta)))


# -- torus classes -------------------------------------------------------------


@dataclass(frozen=True)
class TorusClass:
    """A support set of quadratic keys forming one orbit under diagonal rescaling."""

    support: tuple
    representative: Cochain

    def __str__(self):
        return str(self.representative)


def torus_moduli(space: GradedSpace) -> list:
    """Nonzero odd quadratic codifferentials up to diagonal rescaling.

    A support set S contributes one class when [d, d] vanishes identically
    for d = sum of c_k * key_k over S with the c_k free, and the rescaling
    characters prod(r_inputs) / r_target of the keys in S are independent, so
    any choice of nonzero coefficients can be scaled to all ones (over an
    algebraically closed field).  When each parity part has dimension at most
    one every parity preserving automorphism is diagonal, and the list is the
    whole moduli space of nonzero structures.  Raises if an admissible support
    carries a continuous modulus.
    """
    keys = [
        (mono, t)
        for mono in gspace.monomial_basis(space, 2)
        for t in range(space.dim)
        if (gspace.monomial_parity(space, mono) + space.parities[t]) % 2 == 1
    ]
    out = []
    for size in range(1, len(keys) + 1):
        for support in combinations(keys, size):
            names = tuple(f"c{i}" for i in range(size))
            d = Cochain(space, {k: Poly.var(names, n) for k, n in zip(support, names)})
            if not bracket(d, d).is_zero():
                continue
            chars = []
            for mono, t in support:
                row = [Fraction(0)] * space.dim
                for i in mono:
                    row[i] += 1
                row[t] -= 1
                chars.append(row)
            if rank(chars, space.dim) < size:
                labels = ", ".join(d.term_label(k) for k in support)
                raise InputError(f"support {{{labels}}} carries a continuous modulus")
            out.append(TorusClass(tuple(support), Cochain(space, {k: Fraction(1) for k in support})))
    return out
