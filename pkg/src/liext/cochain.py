"""Cochains in C(W) = Hom(S(W), W), the circle product and the graded bracket.

A cochain is a finitely supported map from ``(monomial, target)`` pairs to
scalars.  Public builders take the 1-based indices of the usual notation:
``psi(space, (1, 2), 3)`` is the map w1*w2 -> w3 and ``phi(space, 1, 3)`` is
w1 -> w3.  Everything stored is 0-based.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Mapping

from . import gspace
from .gspace import GradedSpace, InputError, colex_key, monomial_basis, monomial_parity
from .scalar import Poly, Scalar, scalar_is_zero, scalar_subs, variables

__all__ = [
    "Cochain",
    "psi",
    "phi",
    "cochain",
    "circle",
    "bracket",
    "coboundary",
    "is_codifferential",
    "jacobi_check",
    "as_matrix",
    "from_matrix",
    "CodifferentialCheck",
]


def _add_into(acc: dict, key, value):
    if scalar_is_zero(value):
        return
    if key in acc:
        s = acc[key] + value
        if scalar_is_zero(s):
            del acc[key]
        else:
            acc[key] = s
    else:
        acc[key] = value


class Cochain:
    """Sparse element of Hom(S(W), W); may mix degrees and parities."""

    __slots__ = ("space", "terms")

    def __init__(self, space: GradedSpace, terms: Mapping | None = None):
        self.space = space
        clean: dict = {}
        for (mono, target), c in (terms or {}).items():
            mono = tuple(mono)
            space.check_index(target)
            for i in mono:
                space.check_index(i)
            if list(mono) != sorted(mono):
                raise InputError(f"monomial {mono} is not sorted; use the builders")
            if any(space.parities[a] and a == b for a, b in zip(mono, mono[1:])):
                raise InputError(f"monomial {mono} repeats an odd generator")
            _add_into(clean, (mono, target), c)
        self.terms = clean

    # -- structure ----------------------------------------------------
    @classmethod
    def zero(cls, space):
        return cls(space)

    def is_zero(self) -> bool:
        return not self.terms

    def key_parity(self, key) -> int:
        mono, target = key
        return (monomial_parity(self.space, mono) + self.space.parities[target]) % 2

    def parities(self) -> set:
        return {self.key_parity(k) for k in self.terms}

    @property
    def parity(self):
        """0 or 1; ``None`` for the zero cochain."""
        ps = self.parities()
        if len(ps) > 1:
            raise InputError("cochain is not homogeneous")
        return next(iter(ps), None)

    def homogeneous_parts(self) -> dict:
        parts: dict = {}
        for k, c in self.terms.items():
            parts.setdefault(self.key_parity(k), {})[k] = c
        return {p: Cochain(self.space, t) for p, t in parts.items()}

    def degrees(self) -> set:
        return {len(m) for m, _ in self.terms}

    def component(self, degree: int) -> Cochain:
        return Cochain(self.space, {k: c for k, c in self.terms.items() if len(k[0]) == degree})

    def restrict(self, predicate) -> Cochain:
        return Cochain(self.space, {k: c for k, c in self.terms.items() if predicate(k)})

    def evaluate(self, mono) -> dict:
        """Value on a basis monomial, as {target: coefficient}."""
        mono = tuple(mono)
        return {t: c for (m, t), c in self.terms.items() if m == mono}

    def coefficient(self, mono, target):
        return self.terms.get((tuple(mono), target), Fraction(0))

    def variables(self) -> set:
        out = set()
        for c in self.terms.values():
            out |= variables(c)
        return out

    def subs(self, assignment) -> Cochain:
        return Cochain(self.space, {k: scalar_subs(c, assignment) for k, c in self.terms.items()})

    def _by_monomial(self) -> dict:
        table: dict = {}
        for (m, t), c in self.terms.items():
            table.setdefault(m, []).append((t, c))
        return table

    # -- linear structure ---------------------------------------------
    def _check(self, other):
        if not isinstance(other, Cochain):
            return NotImplemented
        if other.space != self.space:
            raise InputError("cochains live on different spaces")
        return other

    def __add__(self, other):
        if self._check(other) is NotImplemented:
            return NotImplemented
        acc = dict(self.terms)
        for k, c in other.terms.items():
            _add_into(acc, k, c)
        return Cochain(self.space, acc)

    def __neg__(self):
        return Cochain(self.space, {k: -c for k, c in self.terms.items()})

    def __sub__(self, other):
        if self._check(other) is NotImplemented:
            return NotImplemented
        return self + (-other)

    def __mul__(self, scalar):
        if isinstance(scalar, Cochain):
            return NotImplemented
        if isinstance(scalar, int):
            scalar = Fraction(scalar)
        return Cochain(self.space, {k: c * scalar for k, c in self.terms.items()})

    __rmul__ = __mul__

    def __truediv__(self, scalar):
        return self * (1 / Fraction(scalar))

    def __eq__(self, other):
        if not isinstance(other, Cochain):
            return NotImplemented
        return self.space == other.space and (self - other).is_zero()

    __hash__ = None

    def __bool__(self):
        return bool(self.terms)

    # -- display ------------------------------------------------------
    def sorted_items(self):
        return sorted(self.terms.items(), key=lambda kc: (len(kc[0][0]), colex_key(kc[0][0]), kc[0][1]))

    def term_label(self, key) -> str:
        mono, target = key
        name = "phi" if len(mono) == 1 else "psi"
        return f"{name}^{{{''.join(str(i + 1) for i in mono)}}}_{target + 1}"

    def __str__(self):
        if not self.terms:
            return "0"
        parts = []
        for key, c in self.sorted_items():
            label = self.term_label(key)
            if isinstance(c, Poly) and len(c.terms) > 1:
                parts.append(f"{label}*({c})")
            elif c == 1:
                parts.append(label)
            elif c == -1:
                parts.append(f"-{label}")
            else:
                parts.append(f"{label}*{c}" if not str(c).startswith("-") else f"-{label}*{str(c)[1:]}")
        out = parts[0]
        for p in parts[1:]:
            out += f" - {p[1:]}" if p.startswith("-") else f" + {p}"
        return out

    def __repr__(self):
        return f"Cochain({self})"


# -- builders ---------------------------------------------------------


def cochain(space: GradedSpace, entries: Iterable) -> Cochain:
    """Build from ``(inputs, output, coeff)`` triples with 1-based indices.

    Inputs in any order are normalized with their Koszul sign; a word that
    repeats an odd generator is rejected.
    """
    acc: dict = {}
    for entry in entries:
        if len(entry) == 2:
            ins, out = entry
            coeff = Fraction(1)
        else:
            ins, out, coeff = entry
        if isinstance(ins, int):
            ins = (ins,)
        word = [i - 1 for i in ins]
        if not word:
            raise InputError("degree-0 cochains are not supported")
        normal = gspace.koszul_sign(word, space)
        if normal is None:
            raise InputError(f"input word {tuple(ins)} vanishes in S(W)")
        sign, mono = normal
        space.check_index(out - 1)
        if isinstance(coeff, int):
            coeff = Fraction(coeff)
        _add_into(acc, (mono, out - 1), coeff * sign)
    return Cochain(space, acc)


def psi(space: GradedSpace, inputs, target: int, coeff: Scalar = 1) -> Cochain:
    """The basis cochain sending the product of ``inputs`` to ``target`` (1-based)."""
    return cochain(space, [(tuple(inputs), target, coeff)])


def phi(space: GradedSpace, source: int, target: int, coeff: Scalar = 1) -> Cochain:
    """Degree-1 cochain w_source -> w_target (1-based)."""
    return cochain(space, [((source,), target, coeff)])


# -- circle product and bracket ---------------------------------------


def _circle_value(phi_table, psi_table, space, mono, l):
    """(phi o psi)(mono) for psi of degree l, as {target: coeff}."""
    out: dict = {}
    n = len(mono)
    for first, second in gspace.shuffles(l, n - l):
        inner = tuple(mono[i] for i in first)
        values = psi_table.get(inner)
        if not values:
            continue
        rest = [mono[i] for i in second]
        arranged = gspace.koszul_sign(list(inner) + rest, space)
        if arranged is None:
            continue
        eps = arranged[0]
        for t, c in values:
            normal = gspace.koszul_sign([t] + rest, space)
            if normal is None:
                continue
            sign, sub = normal
            for s, e in phi_table.get(sub, ()):
                _add_into(out, s, eps * sign * c * e)
    return out


def circle(f: Cochain, g: Cochain) -> Cochain:
    """Composition f o g of coderivation components: g acts first, f afterwards."""
    if f.space != g.space:
        raise InputError("cochains live on different spaces")
    space = f.space
    if f.is_zero() or g.is_zero():
        return Cochain(space)
    f_table = f._by_monomial()
    g_table = g._by_monomial()
    g_degrees = sorted({len(m) for m in g_table})
    # candidate outputs: substitute one output of g into a monomial of f
    candidates: dict = {}
    for fm in f_table:
        for pos, t in enumerate(fm):
            if pos and fm[pos - 1] == t:
                continue
            rest = fm[:pos] + fm[pos + 1:]
            for gm, values in g_table.items():
                if any(vt == t for vt, _ in values):
                    merged = gspace.koszul_sign(list(gm) + list(rest), space)
                    if merged is not None:
                        candidates.setdefault(len(gm), set()).add(merged[1])
    acc: dict = {}
    for l in g_degrees:
        for mono in candidates.get(l, ()):
            for s, c in _circle_value(f_table, g_table, space, mono, l).items():
                _add_into(acc, (mono, s), c)
    return Cochain(space, acc)


def bracket(f: Cochain, g: Cochain) -> Cochain:
    """Graded commutator [f, g] = f o g - (-1)^{|f||g|} g o f."""
    if f.space != g.space:
        raise InputError("cochains live on different spaces")
    result = Cochain(f.space)
    for pf, fp in f.homogeneous_parts().items():
        for pg, gp in g.homogeneous_parts().items():
            term = circle(fp, gp)
            other = circle(gp, fp)
            result = result + (term + other if pf * pg else term - other)
    return result


def coboundary(alpha: Cochain, f: Cochain, check: bool = True) -> Cochain:
    """D_alpha(f) = [alpha, f] for an odd alpha."""
    if alpha.parities() - {1}:
        raise InputError("coboundary operator needs an odd cochain")
    if check and not bracket(alpha, alpha).is_zero():
        raise InputError("[alpha, alpha] != 0, so D_alpha is not a differential")
    return bracket(alpha, f)


@dataclass(frozen=True)
class CodifferentialCheck:
    ok: bool
    obstruction: Cochain

    def __bool__(self):
        return self.ok

    def coefficients(self) -> list:
        return [c for _, c in self.obstruction.sorted_items()]


def is_codifferential(d: Cochain) -> CodifferentialCheck:
    """Whether [d, d] vanishes identically; the obstruction is [d, d] itself."""
    if d.parities() - {1}:
        raise InputError("a codifferential must be odd")
    dd = bracket(d, d)
    return CodifferentialCheck(dd.is_zero(), dd)


def jacobi_check(d: Cochain) -> bool:
    """Evaluate d(d(a,b),c) + (-1)^{bc} d(d(a,c),b) + (-1)^{a(b+c)} d(d(b,c),a) on all basis triples.

    Works with bilinear evaluation on vectors and never calls the bracket.
    """
    space = d.space
    if d.parities() - {1}:
        raise InputError("jacobi_check needs an odd cochain")
    if d.degrees() - {2}:
        raise InputError("jacobi_check needs a degree-2 cochain")
    par = space.parities
    table = d._by_monomial()

    def d_pair(i, j):
        # d(w_i w_j) with w_j w_i = (-1)^{ij} w_i w_j
        if i > j:
            sign = -1 if par[i] and par[j] else 1
            i, j = j, i
        else:
            sign = 1
        if i == j and par[i]:
            return {}
        return {t: sign * c for t, c in table.get((i, j), ())}

    def d_vec(vec, k):
        out: dict = {}
        for i, c in vec.items():
            for t, e in d_pair(i, k).items():
                _add_into(out, t, c * e)
        return out

    n = space.dim
    for a in range(n):
        for b in range(n):
            for c in range(n):
                total: dict = {}
                terms = [
                    (d_vec(d_pair(a, b), c), 1),
                    (d_vec(d_pair(a, c), b), -1 if par[b] and par[c] else 1),
                    (d_vec(d_pair(b, c), a), -1 if par[a] * (par[b] + par[c]) % 2 else 1),
                ]
                for vec, sign in terms:
                    for t, e in vec.items():
                        _add_into(total, t, sign * e)
                if total:
                    return False
    return True


# -- matrices -----------------------------------------------------------


def as_matrix(d: Cochain, rows=None, columns=None) -> list:
    """Matrix of a degree-2 cochain: rows are targets, columns degree-2 monomials.

    ``rows`` and ``columns`` default to all targets and all of S^2 in colex
    order; pass subsets (0-based targets, monomial tuples) to cut out blocks.
    """
    space = d.space
    if d.degrees() - {2}:
        raise InputError("as_matrix needs a degree-2 cochain")
    rows = list(range(space.dim)) if rows is None else list(rows)
    columns = monomial_basis(space, 2) if columns is None else [tuple(c) for c in columns]
    return [[d.coefficient(m, t) for m in columns] for t in rows]


def from_matrix(space: GradedSpace, matrix, rows=None, columns=None) -> Cochain:
    rows = list(range(space.dim)) if rows is None else list(rows)
    columns = monomial_basis(space, 2) if columns is None else [tuple(c) for c in columns]
    terms = {}
    for t, row in zip(rows, matrix):
        for m, c in zip(columns, row):
            terms[(m, t)] = c
    return Cochain(space, terms)
