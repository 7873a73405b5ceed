"""Random generators and independent oracles shared by the test modules."""

from __future__ import annotations

import random
from fractions import Fraction
from itertools import combinations, permutations
from pathlib import Path

from liext.cochain import Cochain
from liext.cohomology import Slice, hom_m, hom_w
from liext.extension import DiagonalAutomorphism, ExtensionData, determinant, push_forward
from liext.gspace import GradedSpace, monomial_basis, monomial_parity

FIXTURES = Path(__file__).resolve().parents[1] / "src" / "liext" / "fixtures"


def random_space(rng: random.Random, max_dim=4, split=False) -> GradedSpace:
    lo = 2 if split else 1
    n = rng.randint(lo, max_dim)
    p = rng.randint(0, n)
    parities = [0] * p + [1] * (n - p)
    module = ()
    if split:
        k = rng.randint(1, n - 1)
        module = tuple(sorted(rng.sample(range(1, n + 1), k)))
    return GradedSpace.create(parities, module=module)


def small_coeff(rng, zero_bias=0.0):
    if rng.random() < zero_bias:
        return Fraction(0)
    return Fraction(rng.choice([-3, -2, -1, 1, 1, 2, 3]), rng.choice([1, 1, 1, 2]))


def random_cochain(rng, space, degree, parity=None, density=0.4, keys=None) -> Cochain:
    """Random homogeneous cochain; ``keys`` restricts the support."""
    if keys is None:
        keys = [(m, t) for m in monomial_basis(space, degree) for t in range(space.dim)]
    if parity is not None:
        keys = [k for k in keys if (monomial_parity(space, k[0]) + space.parities[k[1]]) % 2 == parity]
    terms = {k: small_coeff(rng) for k in keys if rng.random() < density}
    return Cochain(space, terms)


def block_cochain(rng, space, block, parity, density=0.5) -> Cochain:
    return random_cochain(rng, space, block.degree, parity, density, keys=block.keys(space))


def random_invertible_block(rng, size):
    while True:
        m = [[Fraction(rng.randint(-2, 2)) for _ in range(size)] for _ in range(size)]
        if size == 0 or determinant(m) != 0:
            return m


def random_parity_block(rng, space, indices):
    """Invertible matrix on ``indices`` that preserves parity."""
    m = [[Fraction(0)] * len(indices) for _ in indices]
    for par in (0, 1):
        idx = [a for a, i in enumerate(indices) if space.parities[i] == par]
        sub = random_invertible_block(rng, len(idx))
        for x, a in enumerate(idx):
            for y, b in enumerate(idx):
                m[a][b] = sub[x][y]
    return m


def random_diagonal(rng, space) -> DiagonalAutomorphism:
    return DiagonalAutomorphism(
        random_parity_block(rng, space, space.m_indices), random_parity_block(rng, space, space.w_indices)
    )


def random_extension_data(rng, space) -> ExtensionData:
    """Arbitrary block data (not necessarily a codifferential)."""
    return ExtensionData.from_parts(
        space,
        delta=block_cochain(rng, space, hom_w(2), 1),
        mu=block_cochain(rng, space, hom_m(2, 0), 1),
        lam=block_cochain(rng, space, hom_m(1, 1), 1),
        psi=block_cochain(rng, space, hom_m(0, 2), 1),
    )


def random_beta(rng, space, density=0.6) -> Cochain:
    return block_cochain(rng, space, hom_m(0, 1), 0, density)


def transported(rng, e: ExtensionData) -> ExtensionData:
    """e moved by a random block diagonal automorphism; still an extension."""
    from liext.extension import split

    g = random_diagonal(rng, e.space)
    return split(push_forward(e.d, g.matrix(e.space)))


# -- oracle: coderivation extension computed from scratch ------------------


def _sort_word(word, par):
    """Sign and sorted word, by counting odd inversions directly; None if an odd letter repeats."""
    odd = [i for i in word if par[i]]
    if len(odd) != len(set(odd)):
        return None
    inv = sum(1 for a in range(len(word)) for b in range(a + 1, len(word)) if word[a] > word[b] and par[word[a]] and par[word[b]])
    return (-1) ** inv, tuple(sorted(word))


def _as_multilinear(c: Cochain):
    """Table word -> {target: coeff} on every ordering of every monomial."""
    par = c.space.parities
    table = {}
    for (mono, t), v in c.terms.items():
        for perm in set(permutations(mono)):
            s = _sort_word(list(perm), par)
            if s is None:
                continue
            table.setdefault(perm, {})
            table[perm][t] = table[perm].get(t, 0) + s[0] * v
    return table


def brute_circle(f: Cochain, g: Cochain) -> Cochain:
    """(f o g)(x_1...x_n) = sum over l-subsets I of positions of eps(I) f(g(x_I) x_rest).

    Repeated even letters are distinct positions, so equal terms are all
    counted.  Uses the sign of moving x_I to the front computed pairwise, and evaluates
    both maps on ordered words, so nothing is shared with the library code.
    """
    space = f.space
    par = space.parities
    ft, gt = _as_multilinear(f), _as_multilinear(g)
    g_degs = {len(m) for m, _ in g.terms}
    f_degs = {len(m) for m, _ in f.terms}
    out = {}
    for l in g_degs:
        for k in f_degs:
            n = l + k - 1
            for mono in monomial_basis(space, n):
                for I in combinations(range(n), l):
                    rest = [i for i in range(n) if i not in I]
                    # sign of moving x_I in front of the others
                    s = 1
                    for j in I:
                        for r in rest:
                            if r < j and par[mono[r]] and par[mono[j]]:
                                s = -s
                    inner = tuple(mono[i] for i in I)
                    for t, cg in gt.get(inner, {}).items():
                        word = (t,) + tuple(mono[i] for i in rest)
                        for u, cf in ft.get(word, {}).items():
                            key = (mono, u)
                            out[key] = out.get(key, 0) + s * cg * cf
    return Cochain(space, {k: Fraction(v) for k, v in out.items() if v})


def brute_bracket(f: Cochain, g: Cochain) -> Cochain:
    out = Cochain(f.space)
    for pf, fp in f.homogeneous_parts().items():
        for pg, gp in g.homogeneous_parts().items():
            a, b = brute_circle(fp, gp), brute_circle(gp, fp)
            out = out + (a + b if pf * pg else a - b)
    return out


# -- oracle: derivations of an ordinary Lie algebra ------------------------


def derivation_dim(d: Cochain) -> int:
    """dim Der(g) for the Lie algebra on an all-odd space given by d, via f[x,y] = [fx,y] + [x,fy].

    [e_i, e_j] is read off d(v_i v_j) for i < j and extended antisymmetrically.
    """
    from liext._linalg import rank

    n = d.space.dim
    c = {}
    for (mono, t), v in d.terms.items():
        i, j = mono
        c[(i, j, t)] = Fraction(v)
        c[(j, i, t)] = -Fraction(v)

    def br(i, j, k):
        return c.get((i, j, k), Fraction(0))

    # unknown f[a][b] = coefficient of e_a in f(e_b), index a*n + b
    rows = []
    for i in range(n):
        for j in range(i + 1, n):
            for k in range(n):
                row = [Fraction(0)] * (n * n)
                for m in range(n):
                    row[k * n + m] += br(i, j, m)  # f([e_i,e_j])_k
                    row[m * n + i] -= br(m, j, k)  # [f e_i, e_j]_k
                    row[m * n + j] -= br(i, m, k)  # [e_i, f e_j]_k
                rows.append(row)
    return n * n - rank(rows, n * n)


# -- known extensions --------------------------------------------------------


def module_extensions(rng):
    """Random genuine extensions with psi = 0 drawn from the worked families."""
    from liext.cochain import psi as P

    choice = rng.randrange(4)
    if choice == 0:
        S = GradedSpace.create("ooo", module=[3])
        b = Fraction(rng.randint(-3, 3))
        if rng.random() < 0.5:
            delta, lam = P(S, (1, 2), 1), P(S, (2, 3), 3, b)
        else:
            a = Fraction(rng.randint(-2, 2))
            delta, lam = Cochain(S), P(S, (1, 3), 3, a) + P(S, (2, 3), 3, b)
        e = ExtensionData.from_parts(S, delta=delta, lam=lam)
    elif choice == 1:
        S = GradedSpace.create("ooo", module=[1, 2])
        vals = [Fraction(rng.randint(-2, 2)) for _ in range(4)]
        if rng.random() < 0.5:
            mu, lam = P(S, (1, 2), 1), P(S, (1, 3), 1, vals[0]) + P(S, (2, 3), 1, vals[1])
        else:
            mu = Cochain(S)
            lam = P(S, (1, 3), 1, vals[0]) + P(S, (2, 3), 1, vals[1]) + P(S, (1, 3), 2, vals[2]) + P(S, (2, 3), 2, vals[3])
        e = ExtensionData.from_parts(S, mu=mu, lam=lam)
    elif choice == 2:
        S = GradedSpace.create("eo", module=[1])
        e = ExtensionData.from_parts(S, lam=P(S, (1, 2), 1, Fraction(rng.randint(-2, 2))))
    else:
        S = GradedSpace.create("oo", module=[1])
        e = ExtensionData.from_parts(S, lam=P(S, (1, 2), 1, Fraction(rng.randint(-2, 2))))
    return transported(rng, e) if rng.random() < 0.5 else e


def slice_basis(space, *blocks, parity=1):
    return Slice.of(*blocks, parity=parity).basis(space)
