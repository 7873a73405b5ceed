"""Cohomology of coboundary operators D_a = [a, -] on slices of C(V).

Cochains on a split space are grouped into blocks: ``Block(k, l, "M")`` is
C^{k,l} = Hom(M^k W^l, M) and ``Block(0, n, "W")`` is C^n = Hom(W^n, W).  Only
these blocks preserve the ideal M, so they make up the ambient spaces.  On an
unsplit space every cochain lives in a "W" block.

Every subspace is carried as a list of basis cochains.  All quotients take
representatives from the cocycle basis in order, skipping anything already in
the span of the coboundaries and earlier representatives.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Sequence

from . import _linalg
from .cochain import Cochain, bracket
from .gspace import GradedSpace, InputError, colex_key, monomial_basis, monomial_parity
from .scalar import Poly

__all__ = [
    "Block",
    "Slice",
    "hom_m",
    "hom_w",
    "ambient",
    "NeedsInstantiation",
    "IntegrityError",
    "NotInSpace",
    "SliceMap",
    "slice_matrix",
    "CohomologySpace",
    "cohomology_of",
    "restricted_cohomology",
    "double_cohomology",
    "double_coboundaries",
    "triple_differential_psi",
    "triple_cohomology",
    "kernel",
    "image",
    "solve_in",
    "preimage",
    "span",
    "in_span",
    "intersect_slice",
]


class NeedsInstantiation(ValueError):
    """A coefficient is still a polynomial; substitute rational values first."""


class IntegrityError(RuntimeError):
    """A computed coboundary space is not contained in the cocycles."""


class NotInSpace(ValueError):
    """A cochain passed for projection is not a cocycle of the space."""


# -- blocks and slices --------------------------------------------------


@dataclass(frozen=True, order=True)
class Block:
    k: int
    l: int
    target: str = "M"

    def __post_init__(self):
        if self.target not in ("M", "W"):
            raise InputError(f"block target must be 'M' or 'W', got {self.target!r}")
        if self.target == "W" and self.k:
            raise InputError("cochains with values in W must not take M arguments")
        if self.k < 0 or self.l < 0:
            raise InputError("block degrees must be non-negative")

    @property
    def degree(self) -> int:
        return self.k + self.l

    def keys(self, space: GradedSpace, parity=None) -> list:
        if space.split:
            monos = monomial_basis(space, self.degree, (self.k, self.l))
            targets = space.m_indices if self.target == "M" else space.w_indices
        else:
            if self.target == "M" or self.k:
                return []
            monos = monomial_basis(space, self.degree)
            targets = range(space.dim)
        out = []
        for m in monos:
            mp = monomial_parity(space, m)
            for t in targets:
                if parity is None or (mp + space.parities[t]) % 2 == parity:
                    out.append((m, t))
        return out

    def __str__(self):
        return f"C^{{{self.k},{self.l}}}" if self.target == "M" else f"C^{self.l}"


def hom_m(k: int, l: int) -> Block:
    """C^{k,l} = Hom(M^k W^l, M)."""
    return Block(k, l, "M")


def hom_w(n: int) -> Block:
    """C^n = Hom(W^n, W)."""
    return Block(0, n, "W")


@dataclass(frozen=True)
class Slice:
    """A direct sum of blocks of one total degree, optionally of one parity."""

    blocks: tuple
    parity: int | None = None

    def __post_init__(self):
        blocks = tuple(sorted(set(self.blocks)))
        if not blocks:
            raise InputError("a slice needs at least one block")
        if len({b.degree for b in blocks}) != 1:
            raise InputError("all blocks of a slice must have the same degree")
        object.__setattr__(self, "blocks", blocks)

    @classmethod
    def of(cls, *blocks, parity=None):
        return cls(tuple(blocks), parity)

    @property
    def degree(self) -> int:
        return self.blocks[0].degree

    def keys(self, space: GradedSpace) -> list:
        out = []
        for b in self.blocks:
            out.extend(b.keys(space, self.parity))
        return out

    def key_set(self, space) -> frozenset:
        return frozenset(self.keys(space))

    def basis(self, space) -> list:
        return [Cochain(space, {key: Fraction(1)}) for key in self.keys(space)]

    def __str__(self):
        s = " + ".join(str(b) for b in self.blocks)
        if self.parity is not None:
            s += " (odd)" if self.parity else " (even)"
        return s


def ambient(space: GradedSpace, degree: int, parity=None, min_m: int = 0) -> Slice | None:
    """All ideal-preserving cochains of a degree; ``min_m=1`` drops the C^{0,l} blocks."""
    if degree < 1:
        return None
    blocks = [hom_w(degree)]
    if space.split:
        blocks += [hom_m(k, degree - k) for k in range(min_m, degree + 1)]
    return Slice(tuple(blocks), parity)


def _flip(parity):
    return None if parity is None else 1 - parity


# -- vectors --------------------------------------------------------------


def _key_order(key):
    mono, t = key
    return (len(mono), colex_key(mono), t)


def _rational(c, where=""):
    if isinstance(c, Poly):
        if not c.is_constant():
            raise NeedsInstantiation(
                f"coefficient {c} depends on {', '.join(sorted(c.variables()))}{where}; "
                "instantiate parameters first"
            )
        return c.constant_value()
    return Fraction(c)


def _frame(groups):
    keys = set()
    for g in groups:
        for c in g:
            keys.update(c.terms)
    order = sorted(keys, key=_key_order)
    return order, {k: i for i, k in enumerate(order)}


def _vec(c: Cochain, index, n):
    v = [_linalg.ZERO] * n
    for k, x in c.terms.items():
        v[index[k]] = _rational(x)
    return v


def _from_vec(space, order, v) -> Cochain:
    return Cochain(space, {order[i]: x for i, x in enumerate(v) if x})


def _combine(space, basis, coeffs) -> Cochain:
    acc = Cochain(space)
    for b, c in zip(basis, coeffs):
        if c:
            acc = acc + b * c
    return acc


def span(cochains: Sequence[Cochain], space=None) -> list:
    """Echelon basis of the span (lowest key pivots first)."""
    cochains = list(cochains)
    if not cochains:
        return []
    space = space or cochains[0].space
    order, index = _frame([cochains])
    n = len(order)
    if not n:
        return []
    red, _ = _linalg.rref([_vec(c, index, n) for c in cochains], n)
    return [_from_vec(space, order, r) for r in red]


def in_span(basis: Sequence[Cochain], c: Cochain) -> bool:
    order, index = _frame([basis, [c]])
    n = len(order)
    if not n:
        return True
    red, piv = _linalg.rref([_vec(b, index, n) for b in basis], n)
    return _linalg.in_span(red, piv, _vec(c, index, n))


def _coefficients(basis, c):
    """Coefficients of c in the given (independent) basis, or None."""
    order, index = _frame([basis, [c]])
    n = len(order)
    if not basis:
        return [] if c.is_zero() else None
    cols = [_vec(b, index, n) for b in basis]
    rows = _linalg.transpose(cols, len(cols), n)
    return _linalg.solve(rows, len(basis), _vec(c, index, n))


def _null_combinations(domain, images):
    """Combinations of ``domain`` whose matching ``images`` combine to zero."""
    order, index = _frame([images])
    n = len(order)
    m = len(domain)
    if not m:
        return []
    if not n:
        return [[Fraction(int(i == j)) for j in range(m)] for i in range(m)]
    cols = [_vec(x, index, n) for x in images]
    rows = _linalg.transpose(cols, m, n)
    return _linalg.nullspace(rows, m)


def kernel(op: Callable, domain: Sequence[Cochain]) -> list:
    """Basis of {x in span(domain) : op(x) = 0}; ``domain`` must be independent."""
    domain = list(domain)
    if not domain:
        return []
    space = domain[0].space
    combos = _null_combinations(domain, [op(x) for x in domain])
    return [_combine(space, domain, v) for v in combos]


def solve_in(op: Callable, domain: Sequence[Cochain], c: Cochain):
    """Some x in span(domain) with op(x) = c (free coordinates zero), or None."""
    domain = list(domain)
    space = c.space
    if c.is_zero():
        return Cochain(space)
    if not domain:
        return None
    images = [op(x) for x in domain]
    order, index = _frame([images, [c]])
    n = len(order)
    cols = [_vec(x, index, n) for x in images]
    rows = _linalg.transpose(cols, len(cols), n)
    x = _linalg.solve(rows, len(domain), _vec(c, index, n))
    return None if x is None else _combine(space, domain, x)


def image(op: Callable, domain: Sequence[Cochain]) -> list:
    return span([op(x) for x in domain])


def preimage(op: Callable, domain: Sequence[Cochain], target: Sequence[Cochain]) -> list:
    """Basis of {x in span(domain) : op(x) in span(target)}."""
    domain = list(domain)
    target = list(target)
    if not domain:
        return []
    space = domain[0].space
    images = [op(x) for x in domain]
    order, index = _frame([images, target])
    n = len(order)
    if not n:
        return list(domain)
    cols = [_vec(x, index, n) for x in images] + [_vec(-t, index, n) for t in target]
    rows = _linalg.transpose(cols, len(cols), n)
    combos = _linalg.nullspace(rows, len(cols))
    parts = [v[: len(domain)] for v in combos]
    return span([_combine(space, domain, v) for v in parts], space) if parts else []


def intersect_slice(cochains: Sequence[Cochain], slice_: Slice) -> list:
    """Basis of span(cochains) intersected with the cochains supported on the slice."""
    cochains = list(cochains)
    if not cochains:
        return []
    space = cochains[0].space
    allowed = slice_.key_set(space)
    outside = [c.restrict(lambda k: k not in allowed) for c in cochains]
    combos = _null_combinations(cochains, outside)
    return span([_combine(space, cochains, v) for v in combos], space) if combos else []


def restrict_kernel(op, slice_: Slice, space: GradedSpace) -> list:
    return kernel(op, slice_.basis(space))


# -- slice matrices -------------------------------------------------------


@dataclass(frozen=True)
class SliceMap:
    domain_basis: tuple
    codomain_basis: tuple
    matrix: tuple

    @property
    def shape(self):
        return len(self.codomain_basis), len(self.domain_basis)

    def rank(self) -> int:
        return _linalg.rank([list(r) for r in self.matrix], len(self.domain_basis))

    def nullity(self) -> int:
        return len(self.domain_basis) - self.rank()

    def compose(self, first: SliceMap) -> list:
        """Matrix of self after first; bases must line up."""
        if first.codomain_basis != self.domain_basis:
            raise InputError("bases do not compose")
        n, m, k = len(self.codomain_basis), len(self.domain_basis), len(first.domain_basis)
        return [
            [sum((self.matrix[i][j] * first.matrix[j][c] for j in range(m)), Fraction(0)) for c in range(k)]
            for i in range(n)
        ]


def full_keys(space: GradedSpace, degree: int, parity=None) -> list:
    out = []
    for m in monomial_basis(space, degree):
        mp = monomial_parity(space, m)
        for t in range(space.dim):
            if parity is None or (mp + space.parities[t]) % 2 == parity:
                out.append((m, t))
    return out


def slice_matrix(alpha: Cochain, slice_: Slice | Sequence, codomain=None) -> SliceMap:
    """Matrix of D_alpha on a slice.

    ``slice_`` may also be an explicit list of keys.  The codomain defaults to
    every key of the next degree and opposite parity.
    """
    space = alpha.space
    for c in alpha.terms.values():
        _rational(c, " in the operator")
    if isinstance(slice_, Slice):
        dom = slice_.keys(space)
        cod_default = full_keys(space, slice_.degree + 1, _flip(slice_.parity))
    else:
        dom = list(slice_)
        degs = {len(m) for m, _ in dom}
        cod_default = full_keys(space, max(degs, default=0) + 1) if degs else []
    if codomain is None:
        cod = cod_default
    elif isinstance(codomain, Slice):
        cod = codomain.keys(space)
    else:
        cod = list(codomain)
    index = {k: i for i, k in enumerate(cod)}
    cols = []
    for key in dom:
        out = bracket(alpha, Cochain(space, {key: Fraction(1)}))
        col = [Fraction(0)] * len(cod)
        for k, c in out.terms.items():
            if k not in index:
                raise InputError(f"image term {k} falls outside the codomain")
            col[index[k]] = _rational(c)
        cols.append(col)
    rows = tuple(tuple(cols[j][i] for j in range(len(dom))) for i in range(len(cod)))
    return SliceMap(tuple(dom), tuple(cod), rows)


# -- quotient spaces ------------------------------------------------------


@dataclass
class CohomologySpace:
    """Quotient span(cocycles) / span(coboundaries) with chosen representatives."""

    space: GradedSpace
    label: str
    cocycles: list
    coboundaries: list
    representatives: list = field(default_factory=list)

    def __post_init__(self):
        for b in self.coboundaries:
            if not in_span(self.cocycles, b):
                raise IntegrityError(f"{self.label}: coboundary {b} is not a cocycle")
        reps = []
        for z in self.cocycles:
            if not in_span(self.coboundaries + reps, z):
                reps.append(z)
        self.representatives = reps
        if len(reps) + len(span(self.coboundaries, self.space)) != len(span(self.cocycles, self.space)):
            raise IntegrityError(f"{self.label}: dimension count mismatch")

    @property
    def dim(self) -> int:
        return len(self.representatives)

    def contains(self, c: Cochain) -> bool:
        return in_span(self.cocycles, c)

    def is_coboundary(self, c: Cochain) -> bool:
        return in_span(self.coboundaries, c)

    def coordinates(self, c: Cochain) -> list:
        """Class coordinates of a cocycle in the representative basis."""
        if not self.contains(c):
            raise NotInSpace(f"{c} is not a cocycle of {self.label}")
        basis = self.representatives + span(self.coboundaries, self.space)
        coeffs = _coefficients(basis, c)
        if coeffs is None:  # pragma: no cover - contains() guarantees a solution
            raise IntegrityError("projection failed")
        return coeffs[: self.dim]

    def class_is_zero(self, c: Cochain) -> bool:
        return not any(self.coordinates(c))

    def summary(self) -> dict:
        return {
            "space": self.label,
            "dim": self.dim,
            "cocycles": len(self.cocycles),
            "coboundaries": len(span(self.coboundaries, self.space)),
            "representatives": [str(r) for r in self.representatives],
        }


def _d(alpha):
    return lambda x: bracket(alpha, x)


def _prev(space, slice_, prev, min_m):
    if prev is not None:
        return prev
    return ambient(space, slice_.degree - 1, _flip(slice_.parity), min_m)


def _basis(space, s) -> list:
    return [] if s is None else s.basis(space)


def cohomology_of(alpha: Cochain, slice_: Slice, prev: Slice | None = None, min_m: int = 0) -> CohomologySpace:
    """H_alpha on a slice: ker D_alpha there, modulo D_alpha(previous degree) meeting the slice."""
    space = alpha.space
    d = _d(alpha)
    z = kernel(d, slice_.basis(space))
    b = intersect_slice(image(d, _basis(space, _prev(space, slice_, prev, min_m))), slice_)
    return CohomologySpace(space, f"H_alpha({slice_})", z, b)


def restricted_cohomology(mu: Cochain, nu: Cochain, slice_: Slice, prev=None, min_m: int = 0) -> CohomologySpace:
    """H_mu(ker D_nu) on a slice."""
    space = mu.space
    dm, dn = _d(mu), _d(nu)
    z = kernel(dm, kernel(dn, slice_.basis(space)))
    pre = kernel(dn, _basis(space, _prev(space, slice_, prev, min_m)))
    b = intersect_slice(image(dm, pre), slice_)
    return CohomologySpace(space, f"H_mu(ker D)({slice_})", z, b)


def _double_cocycles(mu, nu, space, slice_, min_m):
    dm, dn = _d(mu), _d(nu)
    zmu = kernel(dm, slice_.basis(space))
    target = image(dm, _basis(space, ambient(space, slice_.degree, slice_.parity, min_m)))
    return preimage(dn, zmu, target)


def double_coboundaries(mu, nu, degree, parity=None, min_m=0, prev=None) -> list:
    """D_nu(ker D_mu) + D_mu of a whole degree, as a spanning list (no slicing)."""
    space = mu.space
    src = prev if prev is not None else ambient(space, degree, parity, min_m)
    dom = _basis(space, src)
    dm, dn = _d(mu), _d(nu)
    return span(image(dn, kernel(dm, dom)) + image(dm, dom), space)


def double_cohomology(mu: Cochain, nu: Cochain, slice_: Slice, prev=None, min_m: int = 0) -> CohomologySpace:
    """H_{mu,nu}: the D_nu-bar cohomology of H_mu, computed on cochain representatives.

    Cocycles: phi on the slice with [mu, phi] = 0 and [nu, phi] in the image of D_mu.
    Coboundaries: D_nu(ker D_mu) + D_mu(everything) one degree down, meeting the slice.
    """
    space = mu.space
    z = _double_cocycles(mu, nu, space, slice_, min_m)
    p = _prev(space, slice_, prev, min_m)
    b = intersect_slice(double_coboundaries(mu, nu, p.degree if p else 0, p.parity if p else None, prev=p), slice_) if p else []
    return CohomologySpace(space, f"H_mu,nu({slice_})", z, b)


def _beta_solver(mu, degree, parity, min_m):
    """Linear map c -> particular beta with [mu, beta] = c (free coordinates zero)."""
    dom = _basis(mu.space, ambient(mu.space, degree, parity, min_m))
    dm = _d(mu)

    def solve(c: Cochain) -> Cochain:
        x = solve_in(dm, dom, c)
        if x is None:
            raise NotInSpace(f"{c} is not in the image of D_mu")
        return x

    return solve


def triple_differential_psi(mu, nu, psi, phi: Cochain, min_m: int = 0, beta: Cochain | None = None) -> Cochain:
    """Representative of D_psi([phi-bar]) = [psi, phi] - [nu, beta] where [nu, phi] = [mu, beta].

    ``beta`` may be supplied; otherwise a particular solution is used.
    """
    if not bracket(mu, phi).is_zero():
        raise NotInSpace("phi is not a D_mu-cocycle")
    if phi.is_zero() and beta is None:
        return Cochain(mu.space)
    target = bracket(nu, phi)
    if beta is None:
        degs = phi.degrees()
        if len(degs) != 1:
            raise InputError("phi must be homogeneous in degree")
        par = phi.parity
        beta = _beta_solver(mu, next(iter(degs)), par, min_m)(target)
    elif not (bracket(mu, beta) - target).is_zero():
        raise NotInSpace("supplied beta does not solve [mu, beta] = [nu, phi]")
    return bracket(psi, phi) - bracket(nu, beta)


def _triple_op(mu, nu, psi, degree, parity, min_m):
    solver = _beta_solver(mu, degree, parity, min_m)
    return lambda phi: bracket(psi, phi) - bracket(nu, solver(bracket(nu, phi)))


def triple_cohomology(mu, nu, psi, slice_: Slice, prev=None, min_m: int = 0) -> CohomologySpace:
    """H_{mu,nu,psi}: cohomology of the induced D_psi on H_{mu,nu}."""
    space = mu.space
    n, par = slice_.degree, slice_.parity
    z2 = _double_cocycles(mu, nu, space, slice_, min_m)
    out = _triple_op(mu, nu, psi, n, par, min_m)
    b2_next = double_coboundaries(mu, nu, n, par, min_m)
    z3 = preimage(out, z2, b2_next)
    p = _prev(space, slice_, prev, min_m)
    if p is None:
        b3 = []
    else:
        z2_prev = _double_cocycles(mu, nu, space, p, min_m)
        out_prev = _triple_op(mu, nu, psi, p.degree, p.parity, min_m)
        b3 = intersect_slice(image(out_prev, z2_prev) + double_coboundaries(mu, nu, p.degree, p.parity, prev=p), slice_)
    return CohomologySpace(space, f"H_mu,nu,psi({slice_})", z3, b3)
