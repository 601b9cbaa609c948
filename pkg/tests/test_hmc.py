# MIT License

# Copyright (c) 2023 ayvi-0001

# Permission is hereby granted, free of charge, to any person obtaining a copy
# of this software and associated documentation files (the "Software"), to deal
# in the Software without restriction, including without limitation the rights
# to use, copy, modify, merge, publish, distribute, sublicense, and/or sell
# copies of the Software, and to permit persons to whom the Software is
# furnished to do so, subject to the following conditions:

# The above copyright notice and this permission notice shall be included in all
# copies or substantial portions of the Software.

# THE SOFTWARE IS PROVIDED "AS IS", WITHOUT WARRANTY OF ANY KIND, EXPRESS OR
# IMPLIED, INCLUDING BUT NOT LIMITED TO THE WARRANTIES OF MERCHANTABILITY,
# FITNESS FOR A PARTICULAR PURPOSE AND NONINFRINGEMENT. IN NO EVENT SHALL THE
# AUTHORS OR COPYRIGHT HOLDERS BE LIABLE FOR ANY CLAIM, DAMAGES OR OTHER
# LIABILITY, WHETHER IN AN ACTION OF CONTRACT, TORT OR OTHERWISE, ARISING FROM,
# OUT OF OR IN CONNECTION WITH THE SOFTWARE OR THE USE OR OTHER DEALINGS IN THE
# SOFTWARE.
from __future__ import annotations

import numpy as np
import pytest
from scipy import integrate

from baton.densities import FunctionDensity, NormalTestDensity, ParameterSpace
from baton.exceptions import (
    BatonConfigError,
    BatonContractViolation,
    BatonUnsupportedOperation,
)
from baton.physics import REFERENCE_DETECTORS, EventDataset, sb_posterior
from baton.properties.options import SamplerKind
from baton.rng import root_rng
from baton.samplers import (
    BurninConfig,
    ChainState,
    GradientProvider,
    HmcConfig,
    HmcHyper,
    MCMCSampler,
    UnconstrainedDensity,
    adapt_mass,
    adapt_step_size,
    hamiltonian,
    hmc_step,
    leapfrog,
)


def _standard_normal_grad(q: np.ndarray) -> np.ndarray:
    return -q


def test_leapfrog_conserves_energy() -> None:
    mass = np.ones(3)
    q0 = np.array([1.0, -0.5, 0.3])
    p0 = np.array([0.2, 0.7, -1.1])
    q1, p1 = leapfrog(q0, p0, 0.05, 40, _standard_normal_grad, mass)
    h0 = hamiltonian(-0.5 * float(q0 @ q0), p0, mass)
    h1 = hamiltonian(-0.5 * float(q1 @ q1), p1, mass)
    assert abs(h1 - h0) < 5e-3


def test_leapfrog_is_reversible() -> None:
    mass = np.array([1.0, 2.0])
    q0 = np.array([0.4, -1.2])
    p0 = np.array([-0.3, 0.9])
    q1, p1 = leapfrog(q0, p0, 0.1, 25, _standard_normal_grad, mass)
    q2, p2 = leapfrog(q1, -p1, 0.1, 25, _standard_normal_grad, mass)
    np.testing.assert_allclose(q2, q0, atol=1e-10)
    np.testing.assert_allclose(-p2, p0, atol=1e-10)


def test_dual_averaging_direction() -> None:
    hyper = HmcHyper.initial(2, HmcConfig(step_size=0.5, target_accept=0.8))
    assert adapt_step_size(hyper, 0.1).step_size < 0.5
    assert adapt_step_size(hyper, 1.0).step_size > 0.5
    with pytest.raises(BatonContractViolation):
        adapt_step_size(hyper, 1.5)


def test_adapt_mass_uses_inverse_variance(rng) -> None:
    hyper = HmcHyper.initial(2, HmcConfig())
    rows = rng.generator.standard_normal((5_000, 2)) * [0.5, 4.0]
    adapted = adapt_mass(hyper, rows)
    np.testing.assert_allclose(adapted.mass_diag, [4.0, 1.0 / 16.0], rtol=0.1)
    assert adapted.dual_avg.t == 0


def test_hmc_samples_normal() -> None:
    target = NormalTestDensity(2)
    cfg = BurninConfig(n_chains=4, n_final_samples=1_000)
    result = MCMCSampler(target, cfg, sampler=SamplerKind.hmc).run(root_rng(4))
    batch = result.batch
    assert np.all(batch.weights == 1.0)
    assert batch.n == 4 * 1_000
    np.testing.assert_allclose(batch.mean(), [15.0, 10.0], atol=0.3)
    np.testing.assert_allclose(np.diag(batch.covariance()), [2.25, 6.25], rtol=0.2)


def test_hmc_with_finite_differences() -> None:
    target = NormalTestDensity(1)
    cfg = BurninConfig(n_chains=2, n_final_samples=500)
    hmc = HmcConfig(gradient="fd")
    batch = MCMCSampler(target, cfg, sampler="hmc", hmc=hmc).run(root_rng(8)).batch
    assert abs(float(batch.mean()[0]) - 15.0) < 0.5


def test_hmc_refuses_non_differentiable_target() -> None:
    data = EventDataset(tuple(np.array([0.05]) for _ in REFERENCE_DETECTORS))
    bundle = sb_posterior(data, REFERENCE_DETECTORS, "SB")
    with pytest.raises(BatonUnsupportedOperation):
        MCMCSampler(bundle.posterior, sampler="hmc")


def test_hmc_step_keeps_state_consistent(normal2d) -> None:
    grad = GradientProvider(normal2d)
    hyper = HmcHyper.initial(2, HmcConfig(step_size=0.3, n_leapfrog=10))
    start = np.array([15.0, 10.0])
    state = ChainState(start, normal2d.log_density(start), 1, 0, 0)
    node = root_rng(3)
    accepted = 0
    for i in range(200):
        state = hmc_step(state, normal2d, grad, hyper, node.partition(i))
        assert state.step_index == i + 1
        assert state.log_target == normal2d.log_density(state.position)
        accepted += state.last_accepted
    assert accepted > 120


def _quartic_grad(q: np.ndarray) -> np.ndarray:
    return -(q**3) - q


def test_leapfrog_preserves_phase_space_volume() -> None:
    mass = np.array([1.5, 0.5])
    z0 = np.array([0.8, -0.4, 0.3, 1.1])
    h = 1e-6

    def flow(z: np.ndarray) -> np.ndarray:
        q, p = leapfrog(z[:2], z[2:], 0.1, 15, _quartic_grad, mass)
        return np.concatenate([q, p])

    jac = np.empty((4, 4))
    for j in range(4):
        dz = np.zeros(4)
        dz[j] = h
        jac[:, j] = (flow(z0 + dz) - flow(z0 - dz)) / (2 * h)
    assert np.linalg.det(jac) == pytest.approx(1.0, abs=1e-6)


def test_transform_log_jacobian_matches_the_map() -> None:
    base = FunctionDensity(
        ParameterSpace([0.0, -np.inf, 1.0], [np.inf, 2.0, 3.0]), lambda x: 0.0
    )
    image = UnconstrainedDensity(base)
    y = np.array([0.3, -1.2, 0.7])
    h = 1e-6
    slopes = [
        (image.to_constrained(y + h * e)[k] - image.to_constrained(y - h * e)[k]) / (2 * h)
        for k, e in enumerate(np.eye(3))
    ]
    expected = float(np.sum(np.log(np.abs(slopes))))
    assert image.log_jacobian(y) == pytest.approx(expected, rel=1e-7)


@pytest.mark.parametrize(
    "lower, upper, log_pdf, mass",
    [
        (0.0, np.inf, lambda x: -float(x[0]), 1.0),
        (-np.inf, 2.0, lambda x: float(x[0]) - 2.0, 1.0),
        (1.0, 3.0, lambda x: 0.0, 2.0),
    ],
)
def test_transformed_density_keeps_its_mass(lower, upper, log_pdf, mass) -> None:
    image = UnconstrainedDensity(FunctionDensity(ParameterSpace([lower], [upper]), log_pdf))
    total, _ = integrate.quad(lambda y: np.exp(image.log_density([y])), -40.0, 40.0, limit=200)
    assert total == pytest.approx(mass, rel=1e-6)


def test_step_jitter_must_stay_below_one() -> None:
    with pytest.raises(BatonConfigError):
        HmcConfig(jitter=1.0)
    assert HmcHyper.initial(2, HmcConfig(jitter=0.0)).jitter == 0.0


def test_hmc_is_thread_count_independent(normal2d) -> None:
    cfg = BurninConfig(n_chains=3, n_final_samples=200)
    serial = MCMCSampler(normal2d, cfg, sampler="hmc", threads=1).run(root_rng(17))
    parallel = MCMCSampler(normal2d, cfg, sampler="hmc", threads=3).run(root_rng(17))
    np.testing.assert_array_equal(serial.batch.variates, parallel.batch.variates)
    np.testing.assert_array_equal(serial.batch.weights, parallel.batch.weights)
