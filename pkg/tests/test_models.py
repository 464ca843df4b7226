import numpy as np
import pytest

from thermovisco import laws
from thermovisco import tensor3 as t3
from thermovisco.errors import InvalidParams
from thermovisco.laws import make_state
from thermovisco.models import (
    CATALOG,
    ComplexFluidModel,
    CofactorRatePotential,
    ConcavePotential,
    FluidForcePotential,
    KelvinVoigtPotential,
    Newtonian,
    NewtonianPotential,
    QuadraticForcePotential,
    SkewPotential,
    StoredEnergy,
    VolumetricEnergy,
    build_model,
    complex_fluid,
    corotational_ob,
    generalized_maxwell3d,
    identity_internal_strains,
    kelvin_voigt0d,
    kelvin_voigt3d,
    maxwell0d,
    maxwell3d,
    perfect_gas,
    reiner_rivlin,
    stvenant_kirchhoff,
    upper_convected_ob,
    zj_free_energy,
    zj_free_energy_grad,
)
from thermovisco.verify import check_gradient, potential_gradient_checks, random_rotation, sample_states

from conftest import random_defgrad

SVK = stvenant_kirchhoff(1.0, 1.0)


def test_svk_examples():
    W = stvenant_kirchhoff(0.0, 1.0)
    assert W.value(np.diag([np.sqrt(3.0), 1.0, 1.0])) == pytest.approx(1.0, abs=1e-15)
    assert SVK.value(np.eye(3)) == 0.0
    np.testing.assert_array_equal(SVK.grad(np.eye(3)), 0.0)


@pytest.mark.parametrize("lam, mu", [(1.0, 0.0), (-1.0, 1.0), (1.0, -1.0)])
def test_svk_rejects(lam, mu):
    with pytest.raises(InvalidParams):
        stvenant_kirchhoff(lam, mu)


def test_svk_is_frame_indifferent(rng):
    F = random_defgrad(rng, 100)
    R = random_rotation(rng, 100)
    np.testing.assert_allclose(SVK.value(R @ F), SVK.value(F), rtol=1e-13, atol=1e-14)


def test_stored_energy_default_gradient_is_finite_difference(rng):
    class Quartic(StoredEnergy):
        def value(self, F):
            return t3.frob(F, F) ** 2

    F = random_defgrad(rng, 10)
    np.testing.assert_allclose(Quartic().grad(F), 4 * t3.frob(F, F)[:, None, None] * F, rtol=1e-8)


def test_volumetric_energy_gradient(rng):
    W = VolumetricEnergy(2.0)
    F = random_defgrad(rng, 200)
    assert check_gradient(W.value, W.grad, F, name="volumetric", inner_ndim=2).passed


def test_perfect_gas(rng):
    gas = perfect_gas(1.0)
    F = random_defgrad(rng, 50)
    H = rng.standard_normal((50, 3, 3))
    theta = rng.uniform(0.5, 2, 50)
    s = make_state(F, H, theta)
    np.testing.assert_array_equal(laws.internal_dissipation(gas, s), 0.0)
    sigma = laws.cauchy_from_piola(laws.total_first_piola(gas, s), F)
    expected = -(theta / t3.det(F))[:, None, None] * np.eye(3)
    assert (t3.norm(sigma - expected) / t3.norm(expected)).max() <= 1e-12
    s1 = make_state(np.eye(3), theta=1.7)
    np.testing.assert_allclose(laws.cauchy_from_piola(laws.total_first_piola(gas, s1), np.eye(3)),
                               -1.7 * np.eye(3), atol=1e-15)


def test_reiner_rivlin_examples(rng):
    newt = reiner_rivlin(0.0, 2.0, 0.0)
    d = t3.sym(rng.standard_normal((3, 3)))
    np.testing.assert_allclose(newt.cauchy_stress(1.0, d, 1.0), 2.0 * d, atol=1e-15)
    rr = reiner_rivlin(lambda rho, inv, th: rho * th, 1.0, 1.0)
    np.testing.assert_allclose(rr.cauchy_stress(2.0, np.zeros((3, 3)), 3.0), 6.0 * np.eye(3))
    sq = reiner_rivlin(0.0, 0.0, 1.0)
    np.testing.assert_allclose(sq.cauchy_stress(1.0, np.diag([1.0, -1.0, 0.0]), 1.0), np.diag([1.0, 1, 0]))


def test_linear_reiner_rivlin_is_newtonian(rng):
    F = random_defgrad(rng, 50)
    H = rng.standard_normal((50, 3, 3))
    s = make_state(F, H)
    T_rr = reiner_rivlin(0.0, 2 * 0.9, 0.0).dissipative_stress(s)
    T_n = Newtonian(0.9).dissipative_stress(s)
    assert (t3.norm(T_rr - T_n) / t3.norm(T_n)).max() <= 1e-12


def test_maxwell_natural_state_is_stationary(rng):
    for variant in ("solid", "fluid"):
        model = maxwell3d(SVK, 1.0, variant)
        F = random_defgrad(rng, 20)
        s = make_state(F, xi=F.reshape(20, 9))
        # F F^{-1} is the identity up to roundoff
        np.testing.assert_allclose(laws.total_first_piola(model, s), 0.0, atol=1e-12)
        np.testing.assert_allclose(model.flow_rule(s), 0.0, atol=1e-12)
    s = make_state(np.eye(3), xi=identity_internal_strains(1))
    np.testing.assert_array_equal(laws.total_first_piola(model, s), 0.0)


def test_maxwell_cauchy_stress_symmetric_for_any_flow():
    model = maxwell3d(SVK, 1.0)
    s, _ = sample_states(model, 0, 500)
    sigma = laws.cauchy_from_piola(laws.total_first_piola(model, s), s.F)
    assert (t3.norm(t3.skew(sigma)) / (1 + t3.norm(sigma))).max() <= 1e-13


def test_kelvin_voigt3d_examples(rng):
    model = kelvin_voigt3d(SVK, 2.0)
    F = random_defgrad(rng, 10)
    np.testing.assert_allclose(laws.total_first_piola(model, make_state(F)), SVK.grad(F), rtol=1e-14)
    s = make_state(np.eye(3), np.diag([1.0, 0.0, 0.0]))
    assert t3.frob(model.dissipative_stress(s), s.H) == pytest.approx(2.0, abs=1e-15)


def test_kelvin_voigt3d_stress_derives_from_potential(rng):
    model = kelvin_voigt3d(SVK, 1.4)
    F = random_defgrad(rng, 100)
    s = make_state(F, rng.standard_normal((100, 3, 3)))
    np.testing.assert_allclose(laws.stress_from_potential(KelvinVoigtPotential(1.4), model, s),
                               model.dissipative_stress(s), rtol=1e-12, atol=1e-13)


def test_generalized_maxwell_with_one_branch_reduces(rng):
    single = maxwell3d(SVK, 0.8)
    gen = generalized_maxwell3d([SVK], 0.8)
    s, _ = sample_states(single, 11, 300)
    np.testing.assert_allclose(laws.total_first_piola(gen, s), laws.total_first_piola(single, s),
                               rtol=1e-12, atol=1e-12)
    np.testing.assert_allclose(gen.flow_rule(s), single.flow_rule(s), rtol=1e-12, atol=1e-12)


def test_generalized_maxwell_natural_branches(rng):
    W0 = stvenant_kirchhoff(2.0, 0.5)
    gen = generalized_maxwell3d([SVK, stvenant_kirchhoff(0.3, 0.2)], [1.0, 3.0], W0=W0)
    F = random_defgrad(rng, 10)
    xi = np.concatenate([F.reshape(10, 9)] * 2, axis=-1)
    np.testing.assert_allclose(laws.total_first_piola(gen, make_state(F, xi=xi)), W0.grad(F),
                               rtol=1e-13, atol=1e-13)


def test_generalized_maxwell_dissipation_sums_branches():
    gen = generalized_maxwell3d([SVK, stvenant_kirchhoff(0.3, 0.2)], [1.0, 3.0])
    assert gen.potential is None
    s, _ = sample_states(gen, 5, 200)
    lam = laws.thermodynamic_force(gen, s).reshape(200, 2, 9)
    expected = 1.0 * np.sum(lam[:, 0] ** 2, -1) + 3.0 * np.sum(lam[:, 1] ** 2, -1)
    np.testing.assert_allclose(laws.internal_dissipation(gen, s), expected, rtol=1e-12)


def test_maxwell_rejects_bad_parameters():
    with pytest.raises(InvalidParams):
        maxwell3d(SVK, -1.0)
    with pytest.raises(InvalidParams):
        maxwell3d(SVK, 1.0, "gel")


def test_identity_internal_strains():
    xi = identity_internal_strains(2, (4,))
    assert xi.shape == (4, 18)
    np.testing.assert_array_equal(xi[3, 9:].reshape(3, 3), np.eye(3))


@pytest.mark.parametrize("kind", ["oldroyd_b", "zaremba_jaumann"])
def test_complex_fluid_flow_examples(kind, rng):
    model = complex_fluid(kind, 0.1, 0.9, 10.0)
    xi = t3.sym(rng.standard_normal((3, 3)))
    np.testing.assert_allclose(model.flow_rule(np.zeros((3, 3)), xi), -xi / 10.0, atol=1e-16)
    h = t3.dev(rng.standard_normal((3, 3)))
    np.testing.assert_allclose(model.flow_rule(h, np.zeros((3, 3))), 2 * 0.9 * t3.sym(h) / 10.0, atol=1e-15)


def test_objective_derivatives_by_hand():
    xi = np.diag([1.0, 2.0, 3.0])
    h = np.zeros((3, 3))
    h[0, 1] = 1.0
    np.testing.assert_allclose(upper_convected_ob(xi, h), -(h @ xi + xi @ h.T))
    w = 0.5 * (h - h.T)
    np.testing.assert_allclose(corotational_ob(xi, h), xi @ w - w @ xi)
    # the ZJ rate preserves the spectrum: the commutator is trace-free and symmetric
    assert np.trace(corotational_ob(xi, h)) == 0.0


def test_zj_dissipation_identity(rng):
    model = complex_fluid("zaremba_jaumann", 0.1, 0.9, 10.0, "zj_quadratic")
    h = t3.dev(rng.standard_normal((500, 3, 3)))
    xi = t3.sym(rng.standard_normal((500, 3, 3)))
    aug = model.augmented_dissipation(h, xi)
    ident = model.zj_dissipation_identity(h, xi)
    assert (np.abs(aug - ident) / ident).max() <= 1e-12


def test_zj_free_energy_examples(rng):
    assert zj_free_energy(np.zeros((3, 3)), 10.0, 0.9) == 0.0
    assert zj_free_energy(np.eye(3), 10.0, 0.9) == pytest.approx(25.0 / 3.0, rel=1e-15)
    xi = t3.sym(rng.standard_normal((200, 3, 3)))
    r = check_gradient(lambda x: zj_free_energy(x, 10.0, 0.9), lambda x: zj_free_energy_grad(x, 10.0, 0.9),
                       xi, tol=1e-8, inner_ndim=2)
    assert r.passed, r


def test_complex_fluid_rejects():
    with pytest.raises(InvalidParams):
        complex_fluid("maxwell", 0.1, 0.9, 10.0)
    with pytest.raises(InvalidParams):
        complex_fluid("oldroyd_b", 0.0, 0.9, 10.0)
    with pytest.raises(InvalidParams):
        complex_fluid("custom", 0.1, 0.9, 10.0)


def test_complex_fluid_from_split():
    model = ComplexFluidModel.from_split("oldroyd_b", 1.0, 10.0, 1.0)
    assert (model.eta_s, model.eta_p) == pytest.approx((0.1, 0.9))


def test_maxwell0d_closed_form():
    m = maxwell0d(1.0, 1.0)
    gamma = m.closed_form([1.0], 1.0, [0.0])
    assert m.force(1.0, gamma)[0] == pytest.approx(0.36787944117144233, rel=1e-15)
    relaxed = m.closed_form(np.linspace(0, 5, 11), 0.7, [0.7])
    np.testing.assert_array_equal(m.force(0.7, relaxed), 0.0)


def test_kelvin_voigt0d_closed_form():
    kv = kelvin_voigt0d(1.0, 1.0)
    assert kv.closed_form([1.0], 1.0, [0.0])[0, 0] == pytest.approx(1 - np.exp(-1), rel=1e-15)
    np.testing.assert_array_equal(kv.closed_form(np.linspace(0, 3, 7), 2.0, [2.0]), 2.0)
    kv2 = kelvin_voigt0d(4.0, 1.0)
    assert kv2.closed_form([50.0], 2.0, [0.0])[0, 0] == pytest.approx(0.5, rel=1e-15)


def test_zero_d_rejects():
    with pytest.raises(InvalidParams):
        maxwell0d(0.0, 1.0)


POTENTIALS = [
    (QuadraticForcePotential(0.7), 9),
    (FluidForcePotential(0.7), 9),
    (KelvinVoigtPotential(1.2), 0),
    (NewtonianPotential(1.2), 0),
    (CofactorRatePotential(1.2), 0),
    (ConcavePotential(), 0),
    (SkewPotential(), 0),
]


@pytest.mark.parametrize("name", sorted(CATALOG))
def test_catalog_builds(name):
    model = build_model(name)
    assert model.name == name or name.startswith(model.name.split("-")[0])


def test_unknown_catalog_name():
    with pytest.raises(InvalidParams):
        build_model("bingham")


@pytest.mark.parametrize("pot, n_lam", POTENTIALS, ids=lambda p: getattr(p, "name", str(p)))
def test_potential_gradients(pot, n_lam):
    for report in potential_gradient_checks(pot, n_lam, 300):
        assert report.passed, report
