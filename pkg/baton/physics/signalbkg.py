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
from dataclasses import dataclass
from typing import Optional, Sequence

import numpy as np
import numpy.typing as npt
from scipy import special

from baton.densities import (
    DensityModel,
    HierarchicalPrior,
    LogNormalDensity,
    ParameterSpace,
    UniformDensity,
    build_posterior,
    lognormal_location,
)
from baton.exceptions import BatonConfigError, BatonContractViolation
from baton.properties.options import DensityRole, SbModel
from baton.rng import RngNode
from baton.samplers.state import _Config

__all__: Sequence[str] = (
    "DetectorSpec",
    "SbParams",
    "EventDataset",
    "SbConfig",
    "SbLikelihood",
    "SbModelBundle",
    "REFERENCE_DETECTORS",
    "background_pdf",
    "signal_pdf",
    "generate_sb_data",
    "expected_bin_counts",
    "sb_log_likelihood",
    "sb_prior",
    "sb_posterior",
    "parameter_names",
)

FloatArray = npt.NDArray[np.float64]

N_DETECTORS = 5


@dataclass(frozen=True)
class DetectorSpec:
    exposure: float
    efficiency: float

    def __post_init__(self) -> None:
        if not self.exposure > 0:
            raise BatonContractViolation(f"Exposure must be positive, got {self.exposure}.")
        if not 0 < self.efficiency <= 1:
            raise BatonContractViolation(
                f"Efficiency must lie in (0, 1], got {self.efficiency}."
            )


REFERENCE_DETECTORS: tuple[DetectorSpec, ...] = (
    DetectorSpec(1.6, 0.5),
    DetectorSpec(1.3, 0.6),
    DetectorSpec(1.0, 0.7),
    DetectorSpec(0.7, 0.8),
    DetectorSpec(0.4, 0.9),
)


@dataclass(frozen=True)
class SbParams:
    """Rates are per year, energies in MeV, `lam` in 1/MeV."""

    signal: float
    background: tuple[float, ...]
    lam: float
    m_b: float
    sigma_b: float
    mu_s: float = 0.1
    sigma_s: float = 0.0025

    def __post_init__(self) -> None:
        if self.signal < 0:
            raise BatonContractViolation(f"Signal rate must be >= 0, got {self.signal}.")
        if any(not b > 0 for b in self.background):
            raise BatonContractViolation("Background rates must be positive.")
        if not (self.lam > 0 and self.sigma_b > 0 and self.sigma_s > 0):
            raise BatonContractViolation("lam, sigma_b and sigma_s must be positive.")

    def with_background(self, background: Sequence[float]) -> SbParams:
        return SbParams(
            self.signal,
            tuple(float(b) for b in background),
            self.lam,
            self.m_b,
            self.sigma_b,
            self.mu_s,
            self.sigma_s,
        )


@dataclass(frozen=True)
class EventDataset:
    energies: tuple[FloatArray, ...]
    e_min: float = 0.0
    e_max: float = 0.2

    def __post_init__(self) -> None:
        for i, e in enumerate(self.energies):
            if e.size and (np.min(e) < self.e_min or np.max(e) > self.e_max):
                raise BatonContractViolation(
                    f"Detector {i + 1} has energies outside [{self.e_min}, {self.e_max}]."
                )

    @property
    def counts(self) -> list[int]:
        return [int(e.shape[0]) for e in self.energies]

    @property
    def width(self) -> float:
        return self.e_max - self.e_min

    def rows(self) -> tuple[list[int], list[float]]:
        """(detector_id, energy) columns, detector ids starting at 1."""
        ids = [i + 1 for i, e in enumerate(self.energies) for _ in range(e.shape[0])]
        return ids, [float(v) for e in self.energies for v in e]


@dataclass(frozen=True)
class SbConfig(_Config):
    e_min: float = 0.0
    e_max: float = 0.2
    mu_s: float = 0.1
    sigma_s: float = 0.0025
    exposures: tuple[float, ...] = tuple(d.exposure for d in REFERENCE_DETECTORS)
    efficiencies: tuple[float, ...] = tuple(d.efficiency for d in REFERENCE_DETECTORS)
    true_signal: float = 0.9375
    true_lambda: float = 50.0
    true_m_b: float = 4.7
    true_sigma_b: float = 0.5
    n_chains: int = 4
    n_final_samples: int = 50_000
    band_bins: int = 20
    band_draws: int = 200

    def __post_init__(self) -> None:
        object.__setattr__(self, "exposures", tuple(float(v) for v in self.exposures))
        object.__setattr__(self, "efficiencies", tuple(float(v) for v in self.efficiencies))
        if len(self.exposures) != len(self.efficiencies) or not self.exposures:
            raise BatonConfigError("Need one efficiency per exposure, at least one detector.")
        if not self.e_min < self.e_max:
            raise BatonConfigError("Energy window needs e_min < e_max.")
        if self.band_bins < 1 or self.band_draws < 2:
            raise BatonConfigError("band_bins must be >= 1 and band_draws >= 2.")

    @property
    def detectors(self) -> list[DetectorSpec]:
        return [DetectorSpec(t, e) for t, e in zip(self.exposures, self.efficiencies)]

    def true_params(self, background: Optional[Sequence[float]] = None) -> SbParams:
        if background is None:
            background = [self.true_m_b] * len(self.exposures)
        return SbParams(
            self.true_signal,
            tuple(background),
            self.true_lambda,
            self.true_m_b,
            self.true_sigma_b,
            self.mu_s,
            self.sigma_s,
        )


def background_pdf(energy: FloatArray, lam: float, e_min: float, e_max: float) -> FloatArray:
    """Exponential lam * exp(-lam (E - e_min)) renormalized to the window; flat as lam -> 0."""
    width = e_max - e_min
    x = np.asarray(energy, dtype=np.float64) - e_min
    if lam * width < 1e-12:
        return np.full(x.shape, 1.0 / width)
    pdf: FloatArray = lam * np.exp(-lam * x) / -math.expm1(-lam * width)
    return pdf


def signal_pdf(
    energy: FloatArray, mu_s: float, sigma_s: float, e_min: float, e_max: float
) -> FloatArray:
    """Gaussian line renormalized to the window."""
    z = (np.asarray(energy, dtype=np.float64) - mu_s) / sigma_s
    mass = special.ndtr((e_max - mu_s) / sigma_s) - special.ndtr((e_min - mu_s) / sigma_s)
    pdf: FloatArray = np.exp(-0.5 * z**2) / (sigma_s * math.sqrt(2 * math.pi) * mass)
    return pdf


def _background_energies(u: FloatArray, lam: float, e_min: float, e_max: float) -> FloatArray:
    width = e_max - e_min
    if lam * width < 1e-12:
        return e_min + u * width
    out: FloatArray = e_min - np.log1p(u * math.expm1(-lam * width)) / lam
    return out


def _signal_energies(
    u: FloatArray, mu_s: float, sigma_s: float, e_min: float, e_max: float
) -> FloatArray:
    lo = special.ndtr((e_min - mu_s) / sigma_s)
    hi = special.ndtr((e_max - mu_s) / sigma_s)
    out: FloatArray = np.clip(mu_s + sigma_s * special.ndtri(lo + u * (hi - lo)), e_min, e_max)
    return out


def generate_sb_data(
    true_params: SbParams,
    detectors: Sequence[DetectorSpec],
    rng: RngNode,
    *,
    e_min: float = 0.0,
    e_max: float = 0.2,
    draw_background: bool = True,
) -> tuple[EventDataset, SbParams]:
    """
    Synthetic event energies, one list per detector.

    Detector `i` draws from `rng.partition(i)`: its background rate B_i from the
    log-normal with mean `m_b` and scale `sigma_b` (or `true_params.background[i]`
    when `draw_background` is false), then Poisson counts with means T_i * B_i and
    T_i * eps_i * S, then the energies.

    Returns the dataset and the parameters with the background rates actually used.
    """
    mu_b = lognormal_location(true_params.m_b, true_params.sigma_b)
    energies: list[FloatArray] = []
    rates: list[float] = []
    for i, det in enumerate(detectors):
        gen = rng.partition(i).generator
        if draw_background:
            b_i = float(np.exp(mu_b + true_params.sigma_b * gen.standard_normal()))
        else:
            b_i = true_params.background[i]
        n_bkg = int(gen.poisson(det.exposure * b_i))
        n_sig = int(gen.poisson(det.exposure * det.efficiency * true_params.signal))
        e_bkg = _background_energies(gen.random(n_bkg), true_params.lam, e_min, e_max)
        e_sig = _signal_energies(
            gen.random(n_sig), true_params.mu_s, true_params.sigma_s, e_min, e_max
        )
        energies.append(np.sort(np.concatenate([e_bkg, e_sig])))
        rates.append(b_i)
    return EventDataset(tuple(energies), e_min, e_max), true_params.with_background(rates)


def sb_log_likelihood(
    params: SbParams,
    data: EventDataset,
    detectors: Sequence[DetectorSpec],
    model: SbModel | str = SbModel.sb,
) -> float:
    """
    Extended likelihood, summed over detectors:

        -(mu_B + mu_S) - log N! + sum_j log(mu_B p_B(E_j) + mu_S p_S(E_j))

    with mu_B = T_i B_i and mu_S = T_i eps_i S (zero for the background-only model).
    """
    if len(detectors) != len(data.energies) or len(params.background) != len(detectors):
        raise BatonContractViolation("Data, detectors and background rates disagree.")
    with_signal = SbModel(model) is SbModel.sb
    total = 0.0
    for det, b_i, e in zip(detectors, params.background, data.energies):
        mu_b = det.exposure * b_i
        mu_s = det.exposure * det.efficiency * params.signal if with_signal else 0.0
        n = e.shape[0]
        term = -(mu_b + mu_s) - math.lgamma(n + 1)
        if n:
            rate = mu_b * background_pdf(e, params.lam, data.e_min, data.e_max)
            if mu_s > 0:
                rate = rate + mu_s * signal_pdf(
                    e, params.mu_s, params.sigma_s, data.e_min, data.e_max
                )
            with np.errstate(divide="ignore"):
                term += float(np.sum(np.log(rate)))
        total += term
    return total


def _background_cdf(x: FloatArray, lam: float, e_min: float, e_max: float) -> FloatArray:
    width = e_max - e_min
    if lam * width < 1e-12:
        return (x - e_min) / width
    cdf: FloatArray = np.expm1(-lam * (x - e_min)) / math.expm1(-lam * width)
    return cdf


def expected_bin_counts(
    params: SbParams,
    detectors: Sequence[DetectorSpec],
    edges: FloatArray,
    model: SbModel | str = SbModel.sb,
    *,
    e_min: float = 0.0,
    e_max: float = 0.2,
) -> FloatArray:
    """Expected events per energy bin, summed over detectors."""
    bkg = np.diff(_background_cdf(edges, params.lam, e_min, e_max))
    lo = special.ndtr((e_min - params.mu_s) / params.sigma_s)
    hi = special.ndtr((e_max - params.mu_s) / params.sigma_s)
    sig = np.diff(special.ndtr((edges - params.mu_s) / params.sigma_s)) / (hi - lo)
    mu_b = sum(d.exposure * b for d, b in zip(detectors, params.background))
    mu_s = 0.0
    if SbModel(model) is SbModel.sb:
        mu_s = sum(d.exposure * d.efficiency for d in detectors) * params.signal
    counts: FloatArray = mu_b * bkg + mu_s * sig
    return counts


def parameter_names(model: SbModel | str, n_detectors: int = N_DETECTORS) -> list[str]:
    head = ["lambda", "m_B", "sigma_B"]
    if SbModel(model) is SbModel.sb:
        head = ["S", *head]
    return head + [f"B_{i + 1}" for i in range(n_detectors)]


def sb_prior(model: SbModel | str, n_detectors: int = N_DETECTORS) -> HierarchicalPrior:
    """
    S ~ U(0, 10), lambda ~ U(0, 100), m_B ~ U(0, 50), sigma_B ~ U(0.1, 1), and
    B_i ~ LogNormal with mean m_B and scale sigma_B.
    """
    names = parameter_names(model, n_detectors)
    lower, upper = [0.0, 0.0, 0.1], [100.0, 50.0, 1.0]
    if SbModel(model) is SbModel.sb:
        lower, upper = [0.0, *lower], [10.0, *upper]
    split = len(lower)
    hyper = UniformDensity(lower, upper, names[:split])

    def conditional(h: FloatArray) -> DensityModel:
        return LogNormalDensity.from_mean(h[split - 2], h[split - 1], n_detectors)

    rest = ParameterSpace(
        np.zeros(n_detectors), np.full(n_detectors, np.inf), names[split:]
    )
    return HierarchicalPrior(hyper, conditional, rest)


class SbLikelihood(DensityModel):
    differentiable = False

    def __init__(
        self,
        data: EventDataset,
        detectors: Sequence[DetectorSpec],
        model: SbModel | str,
        space: ParameterSpace,
        *,
        mu_s: float = 0.1,
        sigma_s: float = 0.0025,
    ) -> None:
        super().__init__(space, role=DensityRole.likelihood)
        self.data = data
        self.detectors = list(detectors)
        self.model = SbModel(model)
        self.mu_s = mu_s
        self.sigma_s = sigma_s
        self._offset = 1 if self.model is SbModel.sb else 0

    def __repr__(self) -> str:
        return f"SbLikelihood(model={self.model.value}, detectors={len(self.detectors)})"

    def params_at(self, x: FloatArray) -> SbParams:
        o = self._offset
        return SbParams(
            float(x[0]) if o else 0.0,
            tuple(float(v) for v in x[o + 3 :]),
            float(x[o]),
            float(x[o + 1]),
            float(x[o + 2]),
            self.mu_s,
            self.sigma_s,
        )

    def _log_density(self, x: FloatArray) -> float:
        o = self._offset
        if x[o] <= 0 or np.any(x[o + 3 :] <= 0):
            return -np.inf
        return sb_log_likelihood(self.params_at(x), self.data, self.detectors, self.model)


@dataclass
class SbModelBundle:
    likelihood: SbLikelihood
    prior: HierarchicalPrior
    posterior: DensityModel


def sb_posterior(
    data: EventDataset,
    detectors: Sequence[DetectorSpec],
    model: SbModel | str,
    *,
    mu_s: float = 0.1,
    sigma_s: float = 0.0025,
) -> SbModelBundle:
    prior = sb_prior(model, len(detectors))
    likelihood = SbLikelihood(
        data, detectors, model, prior.space, mu_s=mu_s, sigma_s=sigma_s
    )
    return SbModelBundle(likelihood, prior, build_posterior(likelihood, prior))
