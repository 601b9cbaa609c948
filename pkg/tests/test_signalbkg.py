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
from dataclasses import replace

import numpy as np
import pytest
from scipy import integrate

from baton.exceptions import BatonConfigError, BatonContractViolation
from baton.physics import (
    REFERENCE_DETECTORS,
    DetectorSpec,
    EventDataset,
    SbConfig,
    background_pdf,
    expected_bin_counts,
    generate_sb_data,
    parameter_names,
    sb_log_likelihood,
    sb_posterior,
    sb_prior,
    signal_pdf,
)
from baton.rng import root_rng


@pytest.fixture
def cfg() -> SbConfig:
    return SbConfig()


@pytest.fixture
def dataset(cfg: SbConfig) -> EventDataset:
    data, _ = generate_sb_data(cfg.true_params(), cfg.detectors, root_rng(17))
    return data


def test_expected_signal_count(cfg: SbConfig) -> None:
    params = cfg.true_params()
    expected = sum(d.exposure * d.efficiency for d in cfg.detectors) * params.signal
    assert expected == pytest.approx(3.0)
    edges = np.linspace(cfg.e_min, cfg.e_max, 41)
    counts = expected_bin_counts(params, cfg.detectors, edges)
    total_bkg = sum(d.exposure * b for d, b in zip(cfg.detectors, params.background))
    assert counts.sum() == pytest.approx(total_bkg + 3.0)


@pytest.mark.parametrize("lam", [0.0, 1e-9, 5.0, 50.0])
def test_background_pdf_is_normalized(lam: float) -> None:
    mass, _ = integrate.quad(
        lambda e: float(background_pdf(np.array(e), lam, 0.0, 0.2)), 0.0, 0.2
    )
    assert mass == pytest.approx(1.0, rel=1e-8)


def test_signal_pdf_is_normalized() -> None:
    mass, _ = integrate.quad(
        lambda e: float(signal_pdf(np.array(e), 0.1, 0.0025, 0.0, 0.2)),
        0.0,
        0.2,
        points=[0.1],
    )
    assert mass == pytest.approx(1.0, rel=1e-8)


def test_generated_data_is_deterministic(cfg: SbConfig) -> None:
    a, truth_a = generate_sb_data(cfg.true_params(), cfg.detectors, root_rng(3))
    b, truth_b = generate_sb_data(cfg.true_params(), cfg.detectors, root_rng(3))
    assert a.counts == b.counts
    for ea, eb in zip(a.energies, b.energies):
        np.testing.assert_array_equal(ea, eb)
    assert truth_a == truth_b
    assert len(a.counts) == len(REFERENCE_DETECTORS)


def test_generated_energies_stay_in_window(dataset: EventDataset) -> None:
    for e in dataset.energies:
        assert np.all((e >= 0.0) & (e <= 0.2))
    ids, energies = dataset.rows()
    assert len(ids) == len(energies) == sum(dataset.counts)
    assert min(ids) >= 1 and max(ids) <= 5


def test_fixed_background_rates(cfg: SbConfig) -> None:
    params = cfg.true_params(background=[1.0, 2.0, 3.0, 4.0, 5.0])
    _, used = generate_sb_data(params, cfg.detectors, root_rng(0), draw_background=False)
    assert used.background == (1.0, 2.0, 3.0, 4.0, 5.0)


def test_zero_signal_equals_background_model(
    cfg: SbConfig, dataset: EventDataset
) -> None:
    params = cfg.true_params().with_background([4.0, 5.0, 4.5, 3.9, 5.2])
    params = type(params)(0.0, params.background, params.lam, params.m_b, params.sigma_b)
    sb = sb_log_likelihood(params, dataset, cfg.detectors, "SB")
    bkg = sb_log_likelihood(params, dataset, cfg.detectors, "BKG")
    assert sb == pytest.approx(bkg, rel=1e-12)


def test_likelihood_is_additive_over_detectors(
    cfg: SbConfig, dataset: EventDataset
) -> None:
    params = cfg.true_params(background=[4.0, 5.0, 4.5, 3.9, 5.2])
    total = sb_log_likelihood(params, dataset, cfg.detectors)
    parts = [
        sb_log_likelihood(
            params.with_background([b]),
            EventDataset((e,), dataset.e_min, dataset.e_max),
            [det],
        )
        for det, b, e in zip(cfg.detectors, params.background, dataset.energies)
    ]
    assert total == pytest.approx(math.fsum(parts), rel=1e-12)


def test_tiny_signal_is_continuous_with_background_model(
    cfg: SbConfig, dataset: EventDataset
) -> None:
    params = cfg.true_params(background=[4.0, 5.0, 4.5, 3.9, 5.2])
    tiny = replace(params, signal=1e-12)
    sb = sb_log_likelihood(tiny, dataset, cfg.detectors, "SB")
    bkg = sb_log_likelihood(tiny, dataset, cfg.detectors, "BKG")
    assert math.isfinite(sb)
    assert abs(sb - bkg) < 1e-6


def test_likelihood_ignores_event_order(cfg: SbConfig, dataset: EventDataset) -> None:
    params = cfg.true_params()
    gen = root_rng(1).generator
    shuffled = EventDataset(tuple(gen.permutation(e) for e in dataset.energies))
    assert sb_log_likelihood(params, shuffled, cfg.detectors) == pytest.approx(
        sb_log_likelihood(params, dataset, cfg.detectors), rel=1e-12
    )


def test_likelihood_without_events(cfg: SbConfig) -> None:
    empty = EventDataset(tuple(np.empty(0) for _ in cfg.detectors))
    params = cfg.true_params()
    mu_b = sum(d.exposure * b for d, b in zip(cfg.detectors, params.background))
    assert sb_log_likelihood(params, empty, cfg.detectors, "BKG") == pytest.approx(-mu_b)
    assert sb_log_likelihood(params, empty, cfg.detectors, "SB") == pytest.approx(
        -mu_b - 3.0
    )


def test_detector_validation() -> None:
    with pytest.raises(BatonContractViolation):
        DetectorSpec(1.0, 0.0)
    with pytest.raises(BatonContractViolation):
        DetectorSpec(-1.0, 0.5)
    with pytest.raises(BatonConfigError):
        SbConfig(exposures=(1.0, 2.0), efficiencies=(0.5,))


def test_events_outside_the_window() -> None:
    with pytest.raises(BatonContractViolation):
        EventDataset((np.array([0.3]),))


def test_prior_layout() -> None:
    assert parameter_names("SB") == [
        "S",
        "lambda",
        "m_B",
        "sigma_B",
        "B_1",
        "B_2",
        "B_3",
        "B_4",
        "B_5",
    ]
    prior = sb_prior("BKG")
    assert prior.dims == 8
    assert prior.space.names[0] == "lambda"
    np.testing.assert_array_equal(prior.hyper_prior.space.upper, [100.0, 50.0, 1.0])


def test_prior_draws_are_ancestral() -> None:
    prior = sb_prior("SB")
    draws = prior.sample_iid(root_rng(2), 200)
    assert draws.shape == (200, 9)
    assert np.all(draws[:, 4:] > 0)
    assert np.all(np.isfinite(prior.log_density_batch(draws)))


def test_posterior_support(cfg: SbConfig, dataset: EventDataset) -> None:
    bundle = sb_posterior(dataset, cfg.detectors, "SB")
    x = np.array([0.9375, 50.0, 4.7, 0.5, 4.7, 4.7, 4.7, 4.7, 4.7])
    assert math.isfinite(bundle.posterior.log_density(x))
    x[1] = 0.0
    assert bundle.posterior.log_density(x) == -np.inf
    x[1] = 50.0
    x[0] = -0.1
    assert bundle.posterior.log_density(x) == -np.inf
