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
from typing import Optional, Sequence

import numpy as np
import numpy.typing as npt
from scipy import special

from baton.api.client import _BLOG
from baton.densities import DensityModel
from baton.evidence.region import MIN_EFFECTIVE, HyperRectangle, choose_region
from baton.evidence.result import EvidenceResult
from baton.exceptions import BatonContractViolation, BatonDimensionLimit, BatonRegionError
from baton.properties.options import EvidenceMethod
from baton.samples import SampleBatch

__all__: Sequence[str] = (
    "harmonic_mean_integral",
    "integrate_harmonic",
    "HARMONIC_MAX_DIMS",
    "JACKKNIFE_BLOCKS",
)

FloatArray = npt.NDArray[np.float64]

HARMONIC_MAX_DIMS = 20
JACKKNIFE_BLOCKS = 10


def _log_z(
    log_f: FloatArray, weights: FloatArray, inside: npt.NDArray[np.bool_], log_volume: float
) -> float:
    """log |r| - log E, E = sum_inside(w / f) / sum(w)."""
    if not np.any(inside):
        return math.nan
    log_e = float(
        special.logsumexp(-log_f[inside] + np.log(weights[inside]))
        - math.log(float(np.sum(weights)))
    )
    return log_volume - log_e


def harmonic_mean_integral(
    batch: SampleBatch,
    target: Optional[DensityModel],
    region: HyperRectangle,
    *,
    blocks: int = JACKKNIFE_BLOCKS,
) -> EvidenceResult:
    """
    Z = |r| / E with E the weighted mean of 1_r(x) / f(x) over samples drawn from f/Z.

    Uses the log-densities recorded in `batch`. The uncertainty is a leave-one-block-out
    jackknife over `blocks` contiguous blocks of rows.

    :raises: BatonRegionError if fewer than 100 effective samples lie inside `region`.
    """
    if target is not None and target.dims != batch.dims:
        raise BatonContractViolation("Samples and target differ in dimension.")
    if region.dims != batch.dims:
        raise BatonContractViolation("Samples and region differ in dimension.")
    inside = region.contains_rows(batch.variates)
    inside_weight = float(np.sum(batch.weights[inside]))
    if inside_weight <= 0:
        raise BatonRegionError("No sample weight inside the integration region.")
    if inside_weight < MIN_EFFECTIVE:
        raise BatonRegionError(
            f"Only {inside_weight:g} effective samples inside the region; "
            f"need {MIN_EFFECTIVE:g}."
        )
    log_f = batch.log_densities
    if not np.all(np.isfinite(log_f[inside])):
        raise BatonRegionError("Region contains samples with non-finite log-density.")
    log_volume = region.log_volume
    log_z = _log_z(log_f, batch.weights, inside, log_volume)

    n = batch.n
    edges = np.linspace(0, n, blocks + 1).astype(int)
    estimates = []
    for b in range(blocks):
        keep = np.ones(n, dtype=bool)
        keep[edges[b] : edges[b + 1]] = False
        estimates.append(_log_z(log_f[keep], batch.weights[keep], inside[keep], log_volume))
    jack = np.array(estimates)
    if np.all(np.isfinite(jack)):
        z_jack = np.exp(jack - log_z)
        rel = math.sqrt((blocks - 1) / blocks * float(np.sum((z_jack - z_jack.mean()) ** 2)))
        sigma = rel * math.exp(log_z)
    else:
        sigma = math.inf

    return EvidenceResult(
        log_z, sigma, EvidenceMethod.harmonic_rect, int(np.count_nonzero(inside)), region
    )


def integrate_harmonic(
    batch: SampleBatch,
    target: Optional[DensityModel] = None,
    *,
    max_dims: int = HARMONIC_MAX_DIMS,
) -> EvidenceResult:
    """
    `choose_region` followed by `harmonic_mean_integral`.

    :raises: BatonDimensionLimit above `max_dims` dimensions.
    """
    if batch.dims > max_dims:
        raise BatonDimensionLimit(
            f"Harmonic-mean integration refuses {batch.dims} dimensions (limit {max_dims})."
        )
    region = choose_region(batch, None if target is None else target.space)
    result = harmonic_mean_integral(batch, target, region)
    _BLOG.info(
        "harmonic-mean evidence: log Z = %.6g +- %.3g (%d samples inside)",
        result.log_Z,
        result.relative_uncertainty,
        result.n_used,
    )
    return result
