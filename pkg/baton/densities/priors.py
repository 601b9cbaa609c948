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

from typing import Optional, Sequence

import numpy as np
import numpy.typing as npt
from scipy import special

from baton.densities.model import DensityModel
from baton.densities.space import ParameterSpace
from baton.exceptions import BatonContractViolation
from baton.properties.options import DensityRole
from baton.rng import RngNode

__all__: Sequence[str] = (
    "UniformDensity",
    "LogNormalDensity",
    "lognormal_location",
)

FloatArray = npt.NDArray[np.float64]


class UniformDensity(DensityModel):
    """Normalized product of independent uniform distributions on a finite box."""

    iid_capable = True
    gradient_available = True

    def __init__(
        self,
        lower: Sequence[float],
        upper: Sequence[float],
        names: Optional[Sequence[str]] = None,
    ) -> None:
        space = ParameterSpace.box(lower, upper, names)
        if not np.all(np.isfinite(space.lower)) or not np.all(np.isfinite(space.upper)):
            raise BatonContractViolation("A uniform density needs finite bounds.")
        super().__init__(space, role=DensityRole.prior)
        self._log_norm = -float(np.sum(np.log(space.upper - space.lower)))

    def _log_density(self, x: FloatArray) -> float:
        return self._log_norm

    def _log_density_rows(self, xs: FloatArray) -> FloatArray:
        return np.full(xs.shape[0], self._log_norm)

    def gradient(self, point: FloatArray) -> FloatArray:
        return np.zeros(self.dims)

    def sample_iid(self, rng: RngNode, n: int) -> FloatArray:
        lo, hi = self.space.lower, self.space.upper
        draws: FloatArray = lo + (hi - lo) * rng.generator.random((n, self.dims))
        return draws

    def marginal_variances(self) -> Optional[FloatArray]:
        width = self.space.upper - self.space.lower
        variances: FloatArray = width**2 / 12.0
        return variances


def lognormal_location(mean: float, sigma: float) -> float:
    """Location `mu` of the log-normal whose mean is `mean`: exp(mu + sigma^2/2) = mean."""
    return float(np.log(mean) - 0.5 * sigma**2)


class LogNormalDensity(DensityModel):
    iid_capable = True
    gradient_available = True

    def __init__(
        self,
        mu: Sequence[float] | FloatArray,
        sigma: Sequence[float] | FloatArray,
        names: Optional[Sequence[str]] = None,
    ) -> None:
        """
        Independent log-normal distributions, one per dimension, on (0, inf).

        ---
        :param mu: (required) Location of log(x) per dimension.
        :param sigma: (required) Scale of log(x) per dimension, > 0.
        """
        self.mu = np.asarray(mu, dtype=np.float64)
        self.sigma = np.asarray(sigma, dtype=np.float64)
        if self.mu.shape != self.sigma.shape or self.mu.ndim != 1:
            raise BatonContractViolation("mu and sigma must be 1D and of equal length.")
        if not np.all(self.sigma > 0):
            raise BatonContractViolation(f"Log-normal sigma must be positive: {self.sigma}.")
        dims = self.mu.shape[0]
        super().__init__(
            ParameterSpace(np.zeros(dims), np.full(dims, np.inf), names),
            role=DensityRole.prior,
        )

    @classmethod
    def from_mean(
        cls, mean: float, sigma: float, dims: int, names: Optional[Sequence[str]] = None
    ) -> LogNormalDensity:
        mu = lognormal_location(mean, sigma)
        return cls(np.full(dims, mu), np.full(dims, sigma), names)

    def _log_density(self, x: FloatArray) -> float:
        if np.any(x <= 0):
            return -np.inf
        logx = np.log(x)
        z = (logx - self.mu) / self.sigma
        return float(
            np.sum(-0.5 * z**2 - logx - np.log(self.sigma) - 0.5 * np.log(2 * np.pi))
        )

    def gradient(self, point: FloatArray) -> FloatArray:
        logx = np.log(point)
        grad: FloatArray = -(1.0 + (logx - self.mu) / self.sigma**2) / point
        return grad

    def sample_iid(self, rng: RngNode, n: int) -> FloatArray:
        z = rng.generator.standard_normal((n, self.dims))
        draws: FloatArray = np.exp(self.mu + self.sigma * z)
        return draws

    def marginal_variances(self) -> Optional[FloatArray]:
        variances: FloatArray = special.expm1(self.sigma**2) * np.exp(
            2 * self.mu + self.sigma**2
        )
        return variances
