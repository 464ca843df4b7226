import re

import numpy as np
import pytest

from thermovisco import tensor3 as t3
from thermovisco.errors import InvalidSymmetry
from thermovisco.models import (
    BrokenFlowModel,
    CofactorRatePotential,
    ConcavePotential,
    KelvinVoigtPotential,
    Newtonian,
    PotentialModel,
    QuadraticForcePotential,
    build_model,
    complex_fluid,
    counterexample_h,
    counterexample_skew,
    kelvin_voigt3d,
    maxwell3d,
    stvenant_kirchhoff,
    zj_free_energy,
    zj_free_energy_grad,
)
from thermovisco.verify import (
    CheckReport,
    check_cauchy_symmetry,
    check_clausius_planck,
    check_convexity,
    check_gradient,
    check_internal_variable_frame_indifference,
    check_material_symmetry,
    check_objective_rate,
    check_stress_frame_indifference,
    defgrad_from_uniform,
    random_rotation,
    random_unimodular,
    run_battery,
    sample_states,
)

SVK = stvenant_kirchhoff(1.0, 1.0)
N = 2000


def test_random_rotation_is_orthogonal():
    R = random_rotation(np.random.default_rng(0), 1000)
    assert t3.norm(t3.T(R) @ R - np.eye(3)).max() <= 1e-14
    assert np.abs(t3.det(R) - 1).max() <= 1e-14


def test_random_rotation_column_means_vanish():
    R = random_rotation(np.random.default_rng(1), 100_000)
    assert np.abs(R.mean(axis=0)).max() <= 3 / np.sqrt(100_000)


def test_random_unimodular():
    S = random_unimodular(np.random.default_rng(2), 100)
    np.testing.assert_allclose(t3.det(S), 1.0, atol=1e-13)
    assert t3.norm(t3.T(S) @ S - np.eye(3)).min() > 1e-3


def test_sampled_states_are_admissible():
    s, R = sample_states(maxwell3d(SVK, 1.0), 0, 5000)
    J = t3.det(s.F)
    assert J.min() >= 0.6**3 - 1e-12 and J.max() <= 1.7**3 + 1e-12
    assert s.theta.min() >= 0.5 and s.theta.max() <= 2.0
    assert t3.det(s.xi.reshape(-1, 3, 3)).min() > 0
    np.testing.assert_allclose(t3.det(R), 1.0, atol=1e-14)


def test_sample_k_depends_only_on_seed_and_index():
    model = maxwell3d(SVK, 1.0)
    a, _ = sample_states(model, 4, 10)
    b, _ = sample_states(model, 4, 50)
    np.testing.assert_array_equal(a.F, b.F[:10])
    np.testing.assert_array_equal(a.xi, b.xi[:10])


def test_defgrad_stretches_are_in_range():
    u = np.random.default_rng(0).random((200, 9))
    F = defgrad_from_uniform(u)
    sv = np.linalg.svd(F, compute_uv=False)
    assert sv.min() >= 0.6 - 1e-12 and sv.max() <= 1.7 + 1e-12


def test_report_line_format():
    r = CheckReport("cauchy-symmetry", 10, 1.5e-17, 3, 1e-10)
    assert re.fullmatch(r"check=cauchy-symmetry samples=10 max_residual=1\.500000e-17 pass=true worst_seed=3",
                        r.to_line())
    assert not CheckReport("x", 1, float("inf"), 0, 1.0).passed


@pytest.mark.parametrize("model", [kelvin_voigt3d(SVK, 1.0), Newtonian(1.0), build_model("reiner-rivlin"),
                                   build_model("svk-elastic"), build_model("perfect-gas")],
                         ids=lambda m: m.name)
def test_stress_frame_indifference_passes(model):
    assert check_stress_frame_indifference(model, N).passed


def test_spin_dependent_stress_fails_frame_indifference():
    r = check_stress_frame_indifference(counterexample_h(), N)
    assert not r.passed and r.max_residual > 1e-2


@pytest.mark.parametrize("variant", ["solid", "fluid"])
def test_internal_variable_frame_indifference(variant):
    assert check_internal_variable_frame_indifference(maxwell3d(SVK, 1.0, variant), N).passed


def test_broken_flow_fails_internal_variable_frame_indifference():
    assert not check_internal_variable_frame_indifference(BrokenFlowModel(SVK), N).passed


def test_material_symmetry_requires_unimodular():
    with pytest.raises(InvalidSymmetry):
        check_material_symmetry(Newtonian(1.0), 2 * np.eye(3))


def test_material_symmetry_classification():
    rng = np.random.default_rng(7)
    Ss = random_unimodular(rng, 5)
    Rs = random_rotation(rng, 5)
    solid, fluid, newt = maxwell3d(SVK, 1.0), maxwell3d(SVK, 1.0, "fluid"), Newtonian(1.0)
    for S in Ss:
        assert check_material_symmetry(newt, S, 300).passed
        assert check_material_symmetry(fluid, S, 300).passed
        assert not check_material_symmetry(solid, S, 300).passed
    for R in Rs:
        assert check_material_symmetry(solid, R, 300).passed


def test_cauchy_symmetry():
    assert check_cauchy_symmetry(maxwell3d(SVK, 1.0), N).passed
    assert check_cauchy_symmetry(build_model("svk-elastic"), N).passed
    r = check_cauchy_symmetry(counterexample_skew(), N)
    assert not r.passed and r.max_residual > 1e-2


def test_clausius_planck():
    kv = PotentialModel(KelvinVoigtPotential(1.0), SVK, name="kv-potential")
    kv.conductivity = 1.0
    assert check_clausius_planck(kv, N).passed
    assert not check_clausius_planck(complex_fluid("oldroyd_b", 0.1, 0.9, 10.0), N).passed
    assert check_clausius_planck(complex_fluid("zaremba_jaumann", 0.1, 0.9, 10.0, "zj_quadratic"), N).passed
    assert not check_clausius_planck(PotentialModel(ConcavePotential()), N).passed


def test_clausius_planck_detects_heat_flowing_up_the_gradient():
    model = build_model("svk-elastic")
    model.heat_flux = lambda s: s.G
    r = check_clausius_planck(model, N)
    assert not r.passed and r.detail["max_heat_power"] > 0


def test_gradient_checks():
    xi = t3.sym(np.random.default_rng(0).standard_normal((300, 3, 3)))
    fn = lambda x: zj_free_energy(x, 10.0, 0.9)
    assert check_gradient(fn, lambda x: zj_free_energy_grad(x, 10.0, 0.9), xi, inner_ndim=2).passed
    assert not check_gradient(fn, lambda x: 2 * zj_free_energy_grad(x, 10.0, 0.9), xi, inner_ndim=2).passed
    F = defgrad_from_uniform(np.random.default_rng(1).random((300, 9)))
    assert check_gradient(SVK.value, SVK.grad, F, inner_ndim=2).passed


def test_convexity():
    assert check_convexity(QuadraticForcePotential(1.0), n_lam=9).passed
    assert check_convexity(CofactorRatePotential(1.0)).passed
    assert not check_convexity(ConcavePotential()).passed


def test_objective_rates():
    assert check_objective_rate(complex_fluid("oldroyd_b", 0.1, 0.9, 10.0), 5).passed
    assert check_objective_rate(complex_fluid("zaremba_jaumann", 0.1, 0.9, 10.0), 5).passed


def test_plain_time_derivative_is_not_objective():
    plain = complex_fluid("custom", 0.1, 0.9, 10.0, ob=lambda xi, h: np.zeros_like(xi))
    assert not check_objective_rate(plain, 5).passed


def test_reversed_spin_is_not_objective():
    # xi w - w xi with w = (h^T - h)/2
    rev = complex_fluid("custom", 0.1, 0.9, 10.0, ob=lambda xi, h: xi @ t3.skew(t3.T(h)) - t3.skew(t3.T(h)) @ xi)
    assert not check_objective_rate(rev, 5).passed


def test_checks_are_deterministic():
    a = check_cauchy_symmetry(maxwell3d(SVK, 1.0), 500, seed=3)
    b = check_cauchy_symmetry(maxwell3d(SVK, 1.0), 500, seed=3)
    assert a == b


GOOD = ["newtonian", "kelvin-voigt3d", "perfect-gas", "svk-elastic", "reiner-rivlin", "maxwell3d-svk",
        "maxwell3d-svk-fluid", "generalized-maxwell3d-svk", "zaremba-jaumann+zj"]
BAD = {
    "counterexample-h": {"stress-frame-indifference", "cauchy-symmetry"},
    "counterexample-skew": {"cauchy-symmetry", "clausius-planck"},
    "counterexample-flow": {"internal-variable-frame-indifference", "clausius-planck"},
    "oldroyd-b": {"clausius-planck"},
    "zaremba-jaumann": {"clausius-planck"},
}


def _model(name):
    if name.endswith("+zj"):
        return build_model(name[:-3]).with_free_energy("zj_quadratic")
    return build_model(name)


@pytest.mark.parametrize("name", GOOD)
def test_good_models_pass_their_battery(name):
    reports = run_battery(_model(name), 2000)
    assert all(r.passed for r in reports), [r.to_line() for r in reports if not r.passed]


@pytest.mark.parametrize("name", sorted(BAD))
def test_counterexamples_fail_designated_checks(name):
    reports = run_battery(_model(name), 2000)
    failed = {r.name for r in reports if not r.passed}
    assert failed == BAD[name]


def test_battery_contents():
    names = [r.name for r in run_battery(build_model("maxwell3d-svk"), 200)]
    assert names == ["internal-variable-frame-indifference", "material-symmetry-rotation", "cauchy-symmetry",
                     "clausius-planck", "gradient-free-energy-F", "gradient-free-energy-theta",
                     "gradient-free-energy-xi", "gradient-potential-H", "gradient-potential-lam", "convexity"]
    names = [r.name for r in run_battery(build_model("newtonian"), 200)]
    assert "material-symmetry-unimodular" in names and "heat-clausius-planck" in names
