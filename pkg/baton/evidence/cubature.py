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

from baton.api.client import _BatonRuntime
from baton.densities import DensityModel
from baton.evidence.region import HyperRectangle
from baton.evidence.result import EvidenceResult
from baton.exceptions import BatonContractViolation, BatonRegionError
from baton.properties.options import EvidenceMethod
from baton.rng import RngNode

__all__: Sequence[str] = ("MCIntegrator", "mc_cubature", "STRATIFIED_MAX_DIMS", "CHUNK_SIZE")

FloatArray = npt.NDArray[np.float64]

STRATIFIED_MAX_DIMS = 6
CHUNK_SIZE = 1 << 16


class MCIntegrator(_BatonRuntime):
    """
    Plain or stratified Monte Carlo integration of exp(log_density) over a box.

    Points are drawn in chunks of `CHUNK_SIZE`; chunk `c` draws from `rng.partition(c)`,
    so the result does not depend on the number of worker threads.
    """

    def __init__(
        self,
        target: DensityModel,
        bounds: HyperRectangle,
        *,
        stratified: bool = False,
        threads: Optional[int] = None,
    ) -> None:
        if bounds.dims != target.dims:
            raise BatonContractViolation(
                f"Integration box has {bounds.dims} dims, target has {target.dims}."
            )
        if not bounds.is_axis_aligned or np.any(bounds.mean != 0):
            raise BatonContractViolation("Cubature needs a plain axis-aligned box.")
        if not (np.all(np.isfinite(bounds.lower)) and np.all(np.isfinite(bounds.upper))):
            raise BatonContractViolation(
                "Cubature needs finite bounds; supply a truncation box."
            )
        if stratified and target.dims > STRATIFIED_MAX_DIMS:
            raise BatonContractViolation(
                f"Stratified grids are limited to {STRATIFIED_MAX_DIMS} dimensions, "
                f"got {target.dims}."
            )
        self.target = target
        self.bounds = bounds
        self.stratified = stratified
        super().__init__(threads=threads)

    def __repr__(self) -> str:
        kind = "stratified" if self.stratified else "plain"
        return f"MCIntegrator({kind}, dims={self.target.dims})"

    @property
    def method(self) -> EvidenceMethod:
        return EvidenceMethod.mc_stratified if self.stratified else EvidenceMethod.mc_plain

    def _plain_chunk(self, job: tuple[RngNode, int]) -> FloatArray:
        node, size = job
        u = node.generator.random((size, self.target.dims))
        lo, hi = self.bounds.lower, self.bounds.upper
        return self.target.log_density_batch(lo + u * (hi - lo))

    def _strata_chunk(self, job: tuple[RngNode, int, int, int]) -> FloatArray:
        node, start, stop, per_axis = job
        d = self.target.dims
        cells = np.stack(np.unravel_index(np.arange(start, stop), (per_axis,) * d), axis=1)
        u = (cells + node.generator.random((stop - start, d))) / per_axis
        lo, hi = self.bounds.lower, self.bounds.upper
        return self.target.log_density_batch(lo + u * (hi - lo))

    def integrate(self, n: int, rng: RngNode) -> EvidenceResult:
        if n < 2:
            raise BatonContractViolation(f"Cubature needs at least 2 points, got {n}.")
        log_volume = self.bounds.log_volume
        d = self.target.dims

        if self.stratified:
            per_axis = math.ceil(round(n ** (1.0 / d), 9))
            total = per_axis**d
            edges = list(range(0, total, CHUNK_SIZE)) + [total]
            jobs = [
                (rng.partition(c), edges[c], edges[c + 1], per_axis)
                for c in range(len(edges) - 1)
            ]
            log_f = np.concatenate(self._map(self._strata_chunk, jobs))
        else:
            total = n
            sizes = [min(CHUNK_SIZE, n - s) for s in range(0, n, CHUNK_SIZE)]
            jobs_plain = [(rng.partition(c), k) for c, k in enumerate(sizes)]
            log_f = np.concatenate(self._map(self._plain_chunk, jobs_plain))

        shift = float(np.max(log_f))
        if not np.isfinite(shift):
            raise BatonRegionError("The integrand vanishes at every cubature point.")
        f = np.exp(log_f - shift)
        log_z = float(special.logsumexp(log_f)) - math.log(total) + log_volume

        if self.stratified:
            paired = f[: total - total % 2].reshape(-1, 2)
            spread = float(np.sum((paired[:, 0] - paired[:, 1]) ** 2))
            log_sigma_sq = -math.inf
            if spread > 0:
                log_sigma_sq = 2 * (log_volume - math.log(total) + shift) + math.log(spread)
        else:
            var = float(np.var(f, ddof=1))
            log_sigma_sq = -math.inf
            if var > 0:
                log_sigma_sq = 2 * (log_volume + shift) + math.log(var / total)
        sigma = math.exp(0.5 * log_sigma_sq)

        self.logger.info(
            "%s cubature: log Z = %.6g, %d points", self.method.value, log_z, total
        )
        return EvidenceResult(log_z, sigma, self.method, total, self.bounds)


def mc_cubature(
    target: DensityModel,
    bounds: HyperRectangle,
    n: int,
    stratified: bool,
    rng: RngNode,
    *,
    threads: Optional[int] = None,
) -> EvidenceResult:
    """
    Z ~ V/n * sum f(x_i) over uniform points of the box `bounds`.

    Stratified mode splits each axis into ceil(n^(1/d)) cells and draws one point per
    cell; its variance is estimated from differences of neighbouring cells.

    :param target: (required) density to integrate.
    :param bounds: (required) axis-aligned box with finite edges.
    :param n: (required) number of points (plain) or the grid target (stratified).
    :param stratified: (required) one point per grid cell instead of iid points.
    :param rng: (required) stream; chunks draw from its partitions.
    :raises: BatonContractViolation for infinite bounds or d > 6 when stratified.
    """
    return MCIntegrator(target, bounds, stratified=stratified, threads=threads).integrate(
        n, rng
    )
