"""Z2-graded spaces, monomials of the symmetric coalgebra S(W), Koszul signs.

Basis indices are 0-based internally.  A monomial is a sorted tuple of basis
indices; an odd index occurs at most once (odd generators square to zero).
Monomials are ordered colexicographically, which for degree 2 on a purely odd
space gives the pair sequence (1,2), (1,3), (2,3), (1,4), ... used to write
codifferentials as matrices.
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass, field
from itertools import combinations, combinations_with_replacement
from math import comb
from typing import Iterator, Sequence

__all__ = [
    "GradedSpace",
    "InputError",
    "Monomial",
    "koszul_sign",
    "shuffles",
    "monomial_basis",
    "monomial_parity",
    "colex_key",
]

Monomial = tuple  # sorted tuple of 0-based basis indices


class InputError(ValueError):
    """Invalid index, space mismatch, or malformed cochain data."""


@dataclass(frozen=True)
class GradedSpace:
    """Finite Z2-graded basis, optionally split as M (ideal) plus W (quotient).

    ``parities[i]`` is 0 for even and 1 for odd.  ``module`` holds the 0-based
    indices of M; when the space is not split, ``module`` is empty and every
    basis vector is treated as belonging to W.
    """

    parities: tuple
    names: tuple = ()
    module: frozenset = field(default_factory=frozenset)
    split: bool = False

    def __post_init__(self):
        parities = tuple(int(p) for p in self.parities)
        if any(p not in (0, 1) for p in parities):
            raise InputError(f"parities must be 0/1, got {parities}")
        object.__setattr__(self, "parities", parities)
        names = tuple(self.names) or tuple(f"v{i + 1}" for i in range(len(parities)))
        if len(names) != len(parities):
            raise InputError("names and parities differ in length")
        if len(set(names)) != len(names):
            raise InputError(f"basis names must be unique: {names}")
        object.__setattr__(self, "names", names)
        module = frozenset(int(i) for i in self.module)
        if any(i < 0 or i >= len(parities) for i in module):
            raise InputError(f"module indices out of range: {sorted(module)}")
        object.__setattr__(self, "module", module)
        if module:
            object.__setattr__(self, "split", True)
        # even-first listing is a convention only
        seen_odd = False
        for p in parities:
            if p:
                seen_odd = True
            elif seen_odd:
                warnings.warn(
                    "even basis elements are conventionally listed first",
                    stacklevel=3,
                )
                break

    @classmethod
    def create(cls, parities, module: Sequence[int] = (), names: Sequence[str] = (), split=None):
        """Build from a parity string such as ``"ooo"`` or ``"eo"``.

        ``module`` lists the M-part with 1-based indices, matching v1, v2, ...
        """
        if isinstance(parities, str):
            table = {"e": 0, "o": 1, "0": 0, "1": 1}
            try:
                parities = tuple(table[c] for c in parities)
            except KeyError as exc:
                raise InputError(f"bad parity character {exc.args[0]!r}") from None
        module = frozenset(i - 1 for i in module)
        return cls(tuple(parities), tuple(names), module, bool(module) if split is None else split)

    @property
    def dim(self) -> int:
        return len(self.parities)

    @property
    def m_indices(self) -> tuple:
        return tuple(i for i in range(self.dim) if i in self.module)

    @property
    def w_indices(self) -> tuple:
        return tuple(i for i in range(self.dim) if i not in self.module)

    def parity(self, i: int) -> int:
        self.check_index(i)
        return self.parities[i]

    def in_module(self, i: int) -> bool:
        return i in self.module

    def check_index(self, i):
        if not isinstance(i, int) or i < 0 or i >= self.dim:
            raise InputError(f"basis index {i!r} out of range for dimension {self.dim}")

    def bidegree(self, mono: Monomial) -> tuple:
        """(number of factors from M, number of factors from W)."""
        k = sum(1 for i in mono if i in self.module)
        return k, len(mono) - k

    def __str__(self):
        even = [n for n, p in zip(self.names, self.parities) if not p]
        odd = [n for n, p in zip(self.names, self.parities) if p]
        s = f"<{', '.join(even)} | {', '.join(odd)}>"
        if self.split:
            s += f" M={{{', '.join(self.names[i] for i in self.m_indices)}}}"
        return s


def monomial_parity(space: GradedSpace, mono: Monomial) -> int:
    return sum(space.parities[i] for i in mono) % 2


def koszul_sign(arrangement: Sequence[int], space: GradedSpace):
    """Normalize a word of generators in S(W).

    Returns ``(sign, monomial)`` with ``word = sign * monomial``, or ``None``
    when an odd generator repeats (the word is zero).
    """
    word = list(arrangement)
    for i in word:
        space.check_index(i)
    par = space.parities
    odd_seen = set()
    for i in word:
        if par[i]:
            if i in odd_seen:
                return None
            odd_seen.add(i)
    # stable insertion sort, counting swaps of two odd generators
    sign = 1
    for a in range(1, len(word)):
        x = word[a]
        b = a - 1
        while b >= 0 and word[b] > x:
            if par[word[b]] and par[x]:
                sign = -sign
            word[b + 1] = word[b]
            b -= 1
        word[b + 1] = x
    return sign, tuple(word)


def shuffles(l: int, r: int) -> Iterator[tuple]:
    """All (l, r)-shuffles of positions 0..l+r-1 as (first block, second block).

    Both blocks ascend; the enumeration is lexicographic on the first block.
    """
    if l < 0 or r < 0:
        raise InputError("shuffle block sizes must be non-negative")
    n = l + r
    for first in combinations(range(n), l):
        chosen = set(first)
        yield first, tuple(i for i in range(n) if i not in chosen)


def colex_key(mono: Monomial):
    return tuple(reversed(mono))


def monomial_basis(space: GradedSpace, degree: int, restriction=None) -> list:
    """All degree-``degree`` monomials in colex order.

    ``restriction=(k, l)`` keeps exactly k factors from M and l from W.
    """
    if restriction is not None:
        k, l = restriction
        if k + l != degree:
            raise InputError(f"restriction {restriction} does not sum to degree {degree}")
        if k and not space.split:
            raise InputError("bidegree restriction needs a split space")
    par = space.parities
    out = []
    for mono in combinations_with_replacement(range(space.dim), degree):
        if any(par[a] and a == b for a, b in zip(mono, mono[1:])):
            continue
        if restriction is not None and space.bidegree(mono) != tuple(restriction):
            continue
        out.append(tuple(mono))
    out.sort(key=colex_key)
    return out


def degree_two_count(p: int, q: int) -> int:
    """Size of S^2 of a p|q space: C(p+1,2) + p*q + C(q,2)."""
    return comb(p + 1, 2) + p * q + comb(q, 2)
