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

import math

import numpy as np
import pytest
from scipy import stats

from baton.densities import (
    FunctionDensity,
    NormalTestDensity,
    ParameterSpace,
    UniformDensity,
)
from baton.evidence import (
    EvidenceResult,
    HyperRectangle,
    MCIntegrator,
    bayes_factor,
    choose_region,
    harmonic_mean_integral,
    integrate_harmonic,
    mc_cubature,
)
from baton.exceptions import BatonContractViolation, BatonDimensionLimit, BatonRegionError
from baton.properties.options import EvidenceMethod
from baton.rng import RngNode, root_rng
from baton.samples import SampleBatch

from .conftest import iid_batch


def _uniform_batch(rng: RngNode, n: int = 10_000) -> SampleBatch:
    return iid_batch(rng.generator.random((n, 1)))


def test_region_of_uniform_samples(rng: RngNode, unit_uniform: UniformDensity) -> None:
    region = choose_region(_uniform_batch(rng), unit_uniform.space)
    low, high = region.original_extent()
    assert low[0] == pytest.approx(0.2, abs=0.02)
    assert high[0] == pytest.approx(0.8, abs=0.02)


def test_region_of_correlated_gaussian(rng: RngNode) -> None:
    cov = np.array([[1.0, 0.8], [0.8, 1.0]])
    draws = rng.generator.multivariate_normal([3.0, -2.0], cov, size=20_000)
    batch = iid_batch(draws)
    region = choose_region(batch)
    inside = np.count_nonzero(region.contains_rows(draws))
    # whitened coordinates are independent: 0.6 of the mass per axis
    assert 0.32 * batch.n < inside < 0.40 * batch.n
    np.testing.assert_allclose(region.mean, [3.0, -2.0], atol=0.05)


def test_region_of_correlated_gaussian_against_bounds(rng: RngNode) -> None:
    d = 8
    cov = np.full((d, d), 0.7) + 0.3 * np.eye(d)
    mean = np.full(d, 1.5)
    draws = rng.generator.multivariate_normal(mean, cov, size=80_000)
    draws = draws[np.all(draws > 0, axis=1)]
    log_f = stats.multivariate_normal(mean, cov).logpdf(draws)
    batch = iid_batch(draws, log_f)
    space = ParameterSpace(np.zeros(d), np.full(d, np.inf))

    region = choose_region(batch, space)
    low, _ = region.original_extent()
    assert np.all(low >= 0.0)
    assert np.count_nonzero(np.tril(region.chol, -1)) == 0
    assert np.count_nonzero(region.contains_rows(draws)) >= 1_000

    # the density integrates to the orthant probability
    expected = stats.multivariate_normal(-mean, cov).cdf(np.zeros(d))
    result = harmonic_mean_integral(batch, None, region)
    assert result.Z == pytest.approx(expected, rel=0.1)


def test_harmonic_mean_of_unit_density(
    rng: RngNode, unit_uniform: UniformDensity
) -> None:
    result = integrate_harmonic(_uniform_batch(rng), unit_uniform)
    assert result.method is EvidenceMethod.harmonic_rect
    assert result.Z == pytest.approx(1.0, abs=0.05)
    assert 0 < result.sigma_Z < 0.05
    assert result.n_used > 5_000


def test_harmonic_mean_of_normal(normal2d: NormalTestDensity, rng: RngNode) -> None:
    draws = normal2d.sample_iid(rng, 20_000)
    batch = SampleBatch.from_iid(draws, normal2d.log_density_batch(draws))
    result = integrate_harmonic(batch, normal2d)
    assert result.Z == pytest.approx(1.0, rel=0.05)
    assert abs(result.Z - 1.0) < 5 * result.sigma_Z + 1e-3


def test_harmonic_mean_scales_with_normalization(rng: RngNode) -> None:
    draws = rng.generator.standard_normal((20_000, 1))
    log_f = -0.5 * draws[:, 0] ** 2
    result = integrate_harmonic(iid_batch(draws, log_f))
    assert result.Z == pytest.approx(math.sqrt(2 * math.pi), rel=0.05)


def test_harmonic_dimension_limit(rng: RngNode) -> None:
    batch = iid_batch(rng.generator.standard_normal((500, 21)))
    with pytest.raises(BatonDimensionLimit):
        integrate_harmonic(batch)


def test_too_few_samples_for_a_region(rng: RngNode) -> None:
    with pytest.raises(BatonRegionError):
        integrate_harmonic(iid_batch(rng.generator.standard_normal((10, 1))))


def test_region_without_samples(rng: RngNode) -> None:
    batch = _uniform_batch(rng, 1_000)
    with pytest.raises(BatonRegionError):
        harmonic_mean_integral(batch, None, HyperRectangle.box([2.0], [3.0]))


def test_hyperrectangle_volume() -> None:
    region = HyperRectangle([-1.0, 0.0], [1.0, 0.5], np.zeros(2), np.diag([2.0, 3.0]))
    assert region.volume == pytest.approx(2.0 * 0.5 * 6.0)
    assert not region.is_axis_aligned
    with pytest.raises(BatonContractViolation):
        HyperRectangle([1.0], [0.0])


@pytest.mark.parametrize("stratified", [False, True])
def test_cubature_of_constant_density(stratified: bool) -> None:
    density = UniformDensity([0.0, 0.0], [2.0, 3.0])
    result = mc_cubature(
        density,
        HyperRectangle.box([0.0, 0.0], [2.0, 3.0]),
        4_096,
        stratified,
        root_rng(0),
    )
    assert result.log_Z == pytest.approx(0.0, abs=1e-12)
    assert result.sigma_Z == 0.0


@pytest.mark.parametrize("stratified, n", [(False, 200_000), (True, 40_000)])
def test_cubature_of_normal(
    normal2d: NormalTestDensity, stratified: bool, n: int
) -> None:
    lower, upper = normal2d.truncation_box()
    box = HyperRectangle(lower, upper)
    result = mc_cubature(normal2d, box, n, stratified, root_rng(2))
    assert result.Z == pytest.approx(1.0, rel=0.05)
    assert abs(result.Z - 1.0) < 5 * result.sigma_Z
    expected = EvidenceMethod.mc_stratified if stratified else EvidenceMethod.mc_plain
    assert result.method is expected


def test_cubature_is_thread_count_independent(normal2d: NormalTestDensity) -> None:
    lower, upper = normal2d.truncation_box()
    box = HyperRectangle(lower, upper)
    n = 3 * (1 << 16) + 5
    serial = MCIntegrator(normal2d, box, threads=1).integrate(n, root_rng(5))
    parallel = MCIntegrator(normal2d, box, threads=3).integrate(n, root_rng(5))
    assert serial.log_Z == parallel.log_Z
    assert serial.sigma_Z == parallel.sigma_Z


def test_cubature_contract() -> None:
    density = NormalTestDensity(7)
    with pytest.raises(BatonContractViolation):
        MCIntegrator(density, HyperRectangle.box([-np.inf] * 7, [0.0] * 7))
    with pytest.raises(BatonContractViolation):
        MCIntegrator(density, HyperRectangle.box([-1.0] * 7, [1.0] * 7), stratified=True)


def test_cubature_of_vanishing_integrand() -> None:
    density = FunctionDensity(ParameterSpace.unbounded(1), lambda x: -np.inf)
    with pytest.raises(BatonRegionError):
        mc_cubature(density, HyperRectangle.box([0.0], [1.0]), 100, False, root_rng(0))


def test_bayes_factor() -> None:
    z_a = EvidenceResult(math.log(2.0), 0.2, EvidenceMethod.harmonic_rect, 100)
    z_b = EvidenceResult(0.0, 0.1, EvidenceMethod.harmonic_rect, 100)
    bf = bayes_factor(z_a, z_b)
    assert bf.value == pytest.approx(2.0)
    assert bf.relative_uncertainty == pytest.approx(math.hypot(0.1, 0.1))
    assert bf.uncertainty == pytest.approx(2.0 * math.hypot(0.1, 0.1))


def test_bayes_factor_needs_finite_evidence() -> None:
    z_a = EvidenceResult(-math.inf, 0.0, EvidenceMethod.mc_plain, 10)
    z_b = EvidenceResult(0.0, 0.1, EvidenceMethod.mc_plain, 10)
    with pytest.raises(BatonContractViolation):
        bayes_factor(z_a, z_b)


def test_harmonic_evidence_follows_an_affine_map(rng: RngNode) -> None:
    draws = rng.generator.standard_normal((20_000, 2))
    log_f = -0.5 * np.sum(draws**2, axis=1)
    base = integrate_harmonic(iid_batch(draws, log_f))

    # y = A x + c carries the same density values, so Z grows by |det A|
    a = np.array([[2.0, 0.5], [-1.0, 3.0]])
    mapped = draws @ a.T + np.array([10.0, -4.0])
    result = integrate_harmonic(iid_batch(mapped, log_f))
    assert result.Z / base.Z == pytest.approx(abs(np.linalg.det(a)), rel=0.03)
    assert base.Z == pytest.approx(2 * math.pi, rel=0.05)


def test_cubature_error_shrinks_as_inverse_root_n(normal2d: NormalTestDensity) -> None:
    lower, upper = normal2d.truncation_box()
    box = HyperRectangle(lower, upper)
    small = mc_cubature(normal2d, box, 10_000, False, root_rng(11))
    large = mc_cubature(normal2d, box, 160_000, False, root_rng(12))
    assert small.sigma_Z / large.sigma_Z == pytest.approx(4.0, rel=0.15)


def test_stratified_cubature_is_thread_count_independent(
    normal2d: NormalTestDensity,
) -> None:
    lower, upper = normal2d.truncation_box()
    box = HyperRectangle(lower, upper)
    serial = MCIntegrator(normal2d, box, stratified=True, threads=1)
    parallel = MCIntegrator(normal2d, box, stratified=True, threads=4)
    first = serial.integrate(50_000, root_rng(6))
    second = parallel.integrate(50_000, root_rng(6))
    assert (first.log_Z, first.sigma_Z) == (second.log_Z, second.sigma_Z)
