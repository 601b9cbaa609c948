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
from typing import Any, Optional, Sequence

import numpy as np
import numpy.typing as npt
from scipy import linalg

from baton.densities import ParameterSpace
from baton.diagnostics.estimates import weighted_quantile
from baton.exceptions import (
    BatonContractViolation,
    BatonRegionError,
    BatonSingularCovariance,
)
from baton.samples import SampleBatch

__all__: Sequence[str] = ("HyperRectangle", "choose_region", "MIN_EFFECTIVE")

FloatArray = npt.NDArray[np.float64]

MIN_EFFECTIVE = 100.0
MIN_INSIDE_FRACTION = 0.05

# Central quantile bands tried in order until enough weight falls inside.
_BANDS: tuple[tuple[float, float], ...] = (
    (0.2, 0.8),
    (0.15, 0.85),
    (0.1, 0.9),
    (0.07, 0.93),
    (0.05, 0.95),
    (0.03, 0.97),
    (0.02, 0.98),
    (0.01, 0.99),
)
_SHRINK = 0.9
_MAX_SHRINK = 60


class HyperRectangle:
    """
    Axis-aligned box in whitened coordinates u = L^-1 (x - mean). With mean 0 and
    L = I it is a plain box in the original coordinates.
    """

    __slots__ = ("lower", "upper", "mean", "chol")

    def __init__(
        self,
        lower: Sequence[float] | FloatArray,
        upper: Sequence[float] | FloatArray,
        mean: Optional[FloatArray] = None,
        chol: Optional[FloatArray] = None,
    ) -> None:
        self.lower = np.asarray(lower, dtype=np.float64)
        self.upper = np.asarray(upper, dtype=np.float64)
        d = self.lower.shape[0]
        self.mean = np.zeros(d) if mean is None else np.asarray(mean, dtype=np.float64)
        self.chol = np.eye(d) if chol is None else np.asarray(chol, dtype=np.float64)
        if self.upper.shape != (d,) or self.mean.shape != (d,) or self.chol.shape != (d, d):
            raise BatonContractViolation("HyperRectangle components disagree on dimension.")
        if not np.all(self.lower < self.upper):
            raise BatonContractViolation("HyperRectangle needs lower < upper in every dim.")

    @classmethod
    def box(cls, lower: Sequence[float], upper: Sequence[float]) -> HyperRectangle:
        return cls(lower, upper)

    def __repr__(self) -> str:
        return f"HyperRectangle(dims={self.dims}, log_volume={self.log_volume:.6g})"

    @property
    def dims(self) -> int:
        return int(self.lower.shape[0])

    @property
    def is_axis_aligned(self) -> bool:
        return bool(np.array_equal(self.chol, np.eye(self.dims)))

    @property
    def log_volume(self) -> float:
        """log of the volume in original coordinates: log|det L| + sum log(hi - lo)."""
        return float(
            np.sum(np.log(np.abs(np.diag(self.chol))))
            + np.sum(np.log(self.upper - self.lower))
        )

    @property
    def volume(self) -> float:
        return math.exp(self.log_volume)

    def whiten(self, x: FloatArray) -> FloatArray:
        u: FloatArray = linalg.solve_triangular(
            self.chol, (np.atleast_2d(x) - self.mean).T, lower=True
        ).T
        return u

    def contains_rows(self, x: FloatArray) -> npt.NDArray[np.bool_]:
        u = self.whiten(x)
        inside: npt.NDArray[np.bool_] = np.all((u >= self.lower) & (u <= self.upper), axis=1)
        return inside

    def original_extent(self) -> tuple[FloatArray, FloatArray]:
        """Per-dimension min and max of the box corners in original coordinates."""
        lo_terms = self.chol * self.lower[None, :]
        hi_terms = self.chol * self.upper[None, :]
        low = self.mean + np.sum(np.minimum(lo_terms, hi_terms), axis=1)
        high = self.mean + np.sum(np.maximum(lo_terms, hi_terms), axis=1)
        return low, high

    def shrunk(self, factor: float) -> HyperRectangle:
        centre = 0.5 * (self.lower + self.upper)
        half = 0.5 * (self.upper - self.lower) * factor
        return HyperRectangle(centre - half, centre + half, self.mean, self.chol)

    def to_mapping(self) -> dict[str, Any]:
        return {
            "lower": self.lower,
            "upper": self.upper,
            "mean": self.mean,
            "chol": self.chol,
            "log_volume": self.log_volume,
        }


def _inside_weight(batch: SampleBatch, region: HyperRectangle) -> float:
    return float(np.sum(batch.weights[region.contains_rows(batch.variates)]))


def _fits(region: HyperRectangle, space: ParameterSpace) -> bool:
    low, high = region.original_extent()
    return bool(np.all(low >= space.lower) and np.all(high <= space.upper))


def _band_region(
    batch: SampleBatch, mean: FloatArray, chol: FloatArray
) -> Optional[HyperRectangle]:
    u = linalg.solve_triangular(chol, (batch.variates - mean).T, lower=True).T
    region: Optional[HyperRectangle] = None
    for q_lo, q_hi in _BANDS:
        bounds = np.array(
            [weighted_quantile(u[:, k], [q_lo, q_hi], batch.weights) for k in range(batch.dims)]
        )
        lo, hi = bounds[:, 0], bounds[:, 1]
        if not np.all(lo < hi):
            continue
        region = HyperRectangle(lo, hi, mean, chol)
        if _inside_weight(batch, region) >= MIN_INSIDE_FRACTION * batch.total_weight:
            break
    return region


def _clipped(region: HyperRectangle, space: ParameterSpace) -> HyperRectangle:
    """Intersection of an axis-aligned region with the parameter bounds."""
    sd = np.diag(region.chol)
    with np.errstate(invalid="ignore"):
        lo = np.maximum(region.lower, (space.lower - region.mean) / sd)
        hi = np.minimum(region.upper, (space.upper - region.mean) / sd)
    if not np.all(lo < hi):
        raise BatonRegionError("Region does not overlap the parameter bounds.")
    return HyperRectangle(lo, hi, region.mean, region.chol)


def choose_region(
    batch: SampleBatch, space: Optional[ParameterSpace] = None
) -> HyperRectangle:
    """
    Integration region for the harmonic-mean estimator.

    Samples are whitened with their weighted mean and covariance. The box spans the
    [0.2, 0.8] weighted quantiles per whitened dimension, widened step by step until
    at least 5% of the weight lies inside.

    When `space` is bounded and the rotated box pokes out of it, the box is rebuilt
    axis-aligned (per-dimension scaling only) and intersected with the bounds. Any
    remaining overhang from rounding is removed by shrinking about the centre.

    :raises: BatonRegionError with fewer than 100 effective samples overall or inside.
    :raises: BatonSingularCovariance if the sample covariance is singular.
    """
    total = batch.total_weight
    if total < MIN_EFFECTIVE:
        raise BatonRegionError(
            f"Region construction needs >= {MIN_EFFECTIVE:g} effective samples, got {total:g}."
        )
    mean = batch.mean()
    cov = np.atleast_2d(batch.covariance())
    try:
        chol = linalg.cholesky(cov, lower=True)
    except linalg.LinAlgError as e:
        raise BatonSingularCovariance("Sample covariance is singular; cannot whiten.") from e

    region = _band_region(batch, mean, chol)
    if region is None:
        raise BatonRegionError("Samples are too concentrated to span a region.")

    if space is not None and space.is_bounded and not _fits(region, space):
        aligned = _band_region(batch, mean, np.diag(np.sqrt(np.diag(cov))))
        if aligned is None:
            raise BatonRegionError("Samples are too concentrated to span a region.")
        region = _clipped(aligned, space)
        for _ in range(_MAX_SHRINK):
            if _fits(region, space):
                break
            region = region.shrunk(_SHRINK)
        else:
            raise BatonRegionError("Region could not be shrunk into the parameter bounds.")

    inside = _inside_weight(batch, region)
    if inside < MIN_EFFECTIVE:
        raise BatonRegionError(
            f"Only {inside:g} effective samples inside the region; need {MIN_EFFECTIVE:g}."
        )
    return region
