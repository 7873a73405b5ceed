import random
from fractions import Fraction

import pytest

from helpers import (
    module_extensions,
    random_beta,
    random_diagonal,
    random_extension_data,
    random_space,
    transported,
)
from liext.cochain import Cochain, bracket, is_codifferential, psi
from liext.extension import (
    DiagonalAutomorphism,
    ExtensionData,
    NotAnIdeal,
    apply_beta,
    beta_matrix,
    conjugate,
    conjugate_cleared,
    determinant,
    pullback_diag,
    pullback_general,
    push_forward,
    semidirect_witness_check,
    solve_semidirect_linear,
    split,
    torus_moduli,
    verify_extension,
)
from liext.gspace import GradedSpace, InputError


def test_split_components():
    S = GradedSpace.create("ooo", module=[3])
    d = psi(S, (1, 2), 1) + psi(S, (2, 3), 3, 2) + psi(S, (1, 2), 3, 5)
    e = split(d)
    assert e.delta == psi(S, (1, 2), 1)
    assert e.lam == psi(S, (2, 3), 3, 2)
    assert e.psi == psi(S, (1, 2), 3, 5)
    assert e.mu.is_zero()
    assert e.d == d


def test_split_rejects_non_ideal():
    S = GradedSpace.create("ooo", module=[1, 2])
    with pytest.raises(NotAnIdeal):
        split(psi(S, (1, 2), 3))
    with pytest.raises(InputError):
        split(psi(GradedSpace.create("ooo"), (1, 2), 3))


def test_component_placement_checked():
    S = GradedSpace.create("ooo", module=[3])
    with pytest.raises(InputError):
        ExtensionData.from_parts(S, delta=psi(S, (1, 2), 3))


def test_verify_extension_matches_codifferential():
    rng = random.Random(21)
    hits = 0
    for _ in range(60):
        e = module_extensions(rng)
        assert verify_extension(e).ok
        assert is_codifferential(e.d)
        hits += 1
    assert hits == 60
    S = GradedSpace.create("ooo", module=[3])
    e = ExtensionData.from_parts(S, delta=psi(S, (1, 2), 1), lam=psi(S, (1, 3), 3))
    rep = verify_extension(e)
    assert not rep.ok and not is_codifferential(e.d)
    assert rep.cond_module == psi(S, (1, 2, 3), 3)


def test_apply_beta_is_a_group_action():
    rng = random.Random(22)
    for _ in range(60):
        S = random_space(rng, 4, split=True)
        e = random_extension_data(rng, S)
        b1, b2 = random_beta(rng, S), random_beta(rng, S)
        assert apply_beta(e, Cochain(S)) == e
        assert apply_beta(apply_beta(e, b1), b2) == apply_beta(e, b1 + b2)
        assert apply_beta(apply_beta(e, b1), -b1) == e


def test_apply_beta_equals_pushforward_and_pullback():
    rng = random.Random(23)
    for _ in range(60):
        S = random_space(rng, 4, split=True)
        e = random_extension_data(rng, S)
        beta = random_beta(rng, S)
        moved = apply_beta(e, beta)
        assert moved == split(push_forward(e.d, beta_matrix(beta)))
        assert moved == split(conjugate(e.d, beta_matrix(beta, -1)))


def test_beta_validation():
    S = GradedSpace.create("ooo", module=[3])
    e = ExtensionData.from_parts(S, delta=psi(S, (1, 2), 1))
    with pytest.raises(InputError):
        apply_beta(e, psi(S, (1, 2), 3))
    with pytest.raises(InputError):
        apply_beta(e, Cochain(S, {((2,), 0): Fraction(1)}))
    E = GradedSpace.create("eo", module=[1])
    with pytest.raises(InputError):
        apply_beta(ExtensionData.from_parts(E), Cochain(E, {((1,), 0): Fraction(1)}))


def test_conjugation_round_trip():
    rng = random.Random(24)
    for _ in range(40):
        S = random_space(rng, 4, split=True)
        e = random_extension_data(rng, S)
        g = random_diagonal(rng, S)
        f, finv = g.matrix(S), g.inverse_matrix(S)
        assert conjugate(conjugate(e.d, f), finv) == e.d
        assert push_forward(e.d, f) == conjugate(e.d, finv)
        det, cleared = conjugate_cleared(e.d, f)
        assert cleared == conjugate(e.d, f) * det


def test_transport_preserves_extensions():
    rng = random.Random(25)
    for _ in range(40):
        e = module_extensions(rng)
        t = transported(rng, e)
        assert verify_extension(t).ok


def test_pullback_general_formula():
    rng = random.Random(26)
    for _ in range(30):
        e = module_extensions(rng)
        g = random_diagonal(rng, e.space)
        beta = random_beta(rng, e.space)
        gp = pullback_diag(e, g)
        mb = bracket(gp.mu, beta)
        h = pullback_general(e, g, beta)
        assert h.lam == gp.lam + mb
        assert h.psi == gp.psi + bracket(gp.delta + gp.lam - mb * Fraction(1, 2), beta)


def test_singular_and_parity_breaking_maps():
    S = GradedSpace.create("eo", module=[1])
    with pytest.raises(InputError):
        conjugate(psi(S, (1, 2), 1), [[0, 0], [0, 1]])
    with pytest.raises(InputError):
        conjugate(psi(S, (1, 2), 1), [[1, 1], [0, 1]])
    with pytest.raises(InputError):
        DiagonalAutomorphism([[0]], [[1]]).matrix(S)
    assert determinant([[2, 1], [1, 1]]) == 1


def test_semidirect_witness():
    S = GradedSpace.create("ooo", module=[3])
    delta = psi(S, (1, 2), 1)
    beta = Cochain(S, {((0,), 2): Fraction(1)})
    # psi = [delta, beta] is removed by beta
    e = ExtensionData.from_parts(S, delta=delta, psi=bracket(delta, beta))
    assert semidirect_witness_check(e, beta)
    found = solve_semidirect_linear(e)
    assert found is not None and semidirect_witness_check(e, found)
    tau = ExtensionData.from_parts(S, delta=delta, lam=psi(S, (2, 3), 3, -1), psi=psi(S, (1, 2), 3))
    assert solve_semidirect_linear(tau) is None


def test_torus_moduli_one_one():
    classes = torus_moduli(GradedSpace.create("eo"))
    reps = {str(c.representative) for c in classes}
    assert reps == {"psi^{11}_2", "psi^{12}_1"}
    for c in classes:
        assert is_codifferential(c.representative)
