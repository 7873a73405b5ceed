import random
from fractions import Fraction

import pytest

from helpers import random_cochain
from liext.cochain import Cochain, bracket, psi
from liext.cohomology import (
    NeedsInstantiation,
    NotInSpace,
    Slice,
    ambient,
    cohomology_of,
    double_cohomology,
    hom_m,
    hom_w,
    restricted_cohomology,
    slice_matrix,
    triple_cohomology,
    triple_differential_psi,
)
from liext.extension import semidirect_witness_check
from liext.gspace import GradedSpace, InputError
from liext.problem import load_problem
from helpers import FIXTURES

S3 = GradedSpace.create("ooo", module=[3])
C01 = Slice.of(hom_m(0, 1), parity=0)
C02 = Slice.of(hom_m(0, 2), parity=1)


def ex455(b, a=0, c=0):
    delta = psi(S3, (1, 2), 1)
    lam = psi(S3, (1, 3), 3, a) + psi(S3, (2, 3), 3, b)
    return delta, lam, psi(S3, (1, 2), 3, c)


def test_slice_matrix_beta_map():
    delta, lam, _ = ex455(2)
    m = slice_matrix(delta + lam, C01, C02)
    assert m.domain_basis == (((0,), 2), ((1,), 2))
    assert m.matrix == ((-3, 0),)
    assert m.rank() == 1 and m.nullity() == 1


def test_zero_operator_gives_zero_matrix():
    m = slice_matrix(Cochain(S3), Slice.of(hom_m(1, 1)))
    assert all(x == 0 for row in m.matrix for x in row)
    h = cohomology_of(Cochain(S3), Slice.of(hom_m(1, 1), parity=1))
    assert h.dim == len(Slice.of(hom_m(1, 1), parity=1).keys(S3))


def test_parametric_entries_need_instantiation():
    pf = load_problem(FIXTURES / "ex455.json")
    nu = pf.cochain("delta") + pf.cochain("lam")
    with pytest.raises(NeedsInstantiation):
        slice_matrix(nu, C01)


def test_slice_validation():
    with pytest.raises(InputError):
        Slice.of(hom_m(0, 1), hom_m(0, 2))
    with pytest.raises(InputError):
        hom_w(1).__class__(1, 1, "W")


@pytest.mark.parametrize("b, dim", [(-1, 1), (0, 0), (2, 0), (7, 0)])
def test_tau_degeneration(b, dim):
    delta, lam, _ = ex455(b)
    h = double_cohomology(Cochain(S3), delta + lam, C02)
    tau = psi(S3, (1, 2), 3)
    assert h.dim == dim
    assert h.class_is_zero(tau) == (b != -1)


def test_zero_mu_reduces_to_module_cohomology():
    for b in (-1, 2):
        delta, lam, _ = ex455(b)
        nu = delta + lam
        h2 = double_cohomology(Cochain(S3), nu, C02)
        plain = cohomology_of(nu, C02, prev=C01)
        assert h2.dim == plain.dim


def test_five_dim_tau_class():
    pf = load_problem(FIXTURES / "ex457_tau.json")
    for a19 in (0, 1, 2):
        q = pf.at({"a16": 0, "a19": a19, "b1": 1})
        h = double_cohomology(q.cochain("mu"), q.cochain("nu"), C02)
        assert h.dim >= 1 and not h.class_is_zero(q.cochain("psi"))
    # a16 != 0: the linear class survives, but the quadratic beta action removes psi
    q = pf.at({"a16": 1, "a19": 2, "b1": 1})
    h = double_cohomology(q.cochain("mu"), q.cochain("nu"), C02)
    assert not h.class_is_zero(q.cochain("psi"))
    assert semidirect_witness_check(q.extension(), q.cochain("unit"))


def test_mc_obstruction_vanishes_in_restricted_complex():
    delta, lam, _ = ex455(-1)
    nu = delta + lam
    h = restricted_cohomology(Cochain(S3), nu, Slice.of(hom_m(1, 2), parity=0))
    nn = bracket(nu, nu)
    assert nn.is_zero() or h.class_is_zero(nn)


def test_triple_examples():
    delta, lam, tau = ex455(-1, c=1)
    mu = Cochain(S3)
    t0 = triple_cohomology(mu, delta + lam, Cochain(S3), C02)
    assert t0.dim == 1 and not t0.class_is_zero(psi(S3, (1, 2), 3))
    t1 = triple_cohomology(mu, delta + lam, tau, C02)
    assert t1.dim == 0
    eta = psi(S3, (2, 3), 3)
    teta = triple_cohomology(mu, delta + lam, Cochain(S3), Slice.of(hom_m(1, 1), parity=1))
    assert not teta.class_is_zero(eta)
    assert triple_differential_psi(mu, delta + lam, Cochain(S3), eta).is_zero()
    assert triple_differential_psi(mu, delta + lam, tau, Cochain(S3)).is_zero()


def test_triple_differential_rejects_non_cocycles():
    T = GradedSpace.create("ooo", module=[1, 2])
    mu = psi(T, (1, 2), 1)
    with pytest.raises(NotInSpace):
        triple_differential_psi(mu, Cochain(T), Cochain(T), psi(T, (1, 3), 2))


def test_rank_nullity_on_fixture_slices():
    for name in ("ex455", "ex51", "ex457_tau"):
        pf = load_problem(FIXTURES / f"{name}.json")
        pf = pf.at({p: 1 for p in pf.params})
        e = pf.extension()
        for op in (e.mu, e.delta + e.lam, e.d):
            for k in range(3):
                for l in range(3 - k):
                    if k + l == 0:
                        continue
                    m = slice_matrix(op, Slice.of(hom_m(k, l)))
                    assert m.rank() + m.nullity() == len(m.domain_basis)


def test_representatives_and_coordinates():
    delta, lam, _ = ex455(-1)
    h = double_cohomology(Cochain(S3), delta + lam, C02)
    for r in h.representatives:
        assert h.coordinates(r).count(1) == 1
    for b in h.coboundaries:
        assert not any(h.coordinates(b))
    with pytest.raises(NotInSpace):
        cohomology_of(delta + lam, C02, prev=C01).coordinates(psi(S3, (1, 3), 1) * 0 + psi(S3, (1, 2), 3, 0) + psi(S3, (2, 3), 3))


def test_bracket_descends():
    rng = random.Random(31)
    S = GradedSpace.create("ooo")
    d = psi(S, (1, 2), 3)  # Heisenberg
    h1 = cohomology_of(d, Slice.of(hom_w(1), parity=0))
    h2 = cohomology_of(d, Slice.of(hom_w(2), parity=1))
    prev1 = Slice.of(hom_w(1), parity=0).basis(S)
    for _ in range(30):
        z1 = sum((r * Fraction(rng.randint(-2, 2)) for r in h1.cocycles), Cochain(S))
        z2 = sum((r * Fraction(rng.randint(-2, 2)) for r in h2.cocycles), Cochain(S))
        shift = sum((bracket(d, x) * Fraction(rng.randint(-2, 2)) for x in prev1), Cochain(S))
        base = bracket(z1, z2)
        moved = bracket(z1, z2 + shift)
        assert h2.coordinates(base) == h2.coordinates(moved)


def test_ambient_slices():
    assert ambient(S3, 0) is None
    amb = ambient(S3, 2, 1, min_m=1)
    assert hom_m(0, 2) not in amb.blocks and hom_w(2) in amb.blocks
