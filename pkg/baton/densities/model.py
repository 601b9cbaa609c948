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

from abc import ABC, abstractmethod
from typing import Callable, Optional, Sequence

import numpy as np
import numpy.typing as npt

from baton.densities.space import ParameterSpace
from baton.exceptions import (
    BatonSpaceMismatch,
    BatonUnsupportedOperation,
    validate_log_density,
    validate_point,
)
from baton.properties.options import DensityRole
from baton.rng import RngNode
from baton.samples.batch import SampleBatch

__all__: Sequence[str] = (
    "DensityModel",
    "FunctionDensity",
    "PosteriorDensity",
    "log_density",
    "build_posterior",
    "prior_iid_sample",
)

FloatArray = npt.NDArray[np.float64]


class DensityModel(ABC):
    """
    An evaluable, unnormalized log-density over a parameter space.

    Subclasses implement `_log_density` for points inside the bounds; the public
    `log_density` checks the dimension and returns `-inf` outside the bounds.
    Implementations are pure: evaluation never mutates the instance, so a model can
    be evaluated from many threads at once.
    """

    iid_capable: bool = False
    gradient_available: bool = False
    differentiable: bool = True

    def __init__(
        self, space: ParameterSpace, /, *, role: DensityRole = DensityRole.generic
    ) -> None:
        self.space = space
        self.role = role

    def __repr__(self) -> str:
        return f"{self.__class__.__name__}(dims={self.dims}, role={self.role.value})"

    @property
    def dims(self) -> int:
        return self.space.dims

    @abstractmethod
    def _log_density(self, x: FloatArray) -> float:
        ...

    def _log_density_rows(self, xs: FloatArray) -> FloatArray:
        return np.array([self._log_density(x) for x in xs], dtype=np.float64)

    def log_density(self, point: Sequence[float] | FloatArray) -> float:
        x = validate_point(point, self.dims)
        if not self.space.contains(x):
            return -np.inf
        return validate_log_density(self._log_density(x))

    def log_density_batch(self, points: FloatArray) -> FloatArray:
        """Row-wise `log_density` for an n x d array."""
        points = np.asarray(points, dtype=np.float64)
        if points.ndim != 2 or points.shape[1] != self.dims:
            validate_point(points[0] if points.ndim == 2 else points, self.dims)
        out = np.full(points.shape[0], -np.inf)
        inside = self.space.contains_rows(points)
        if np.any(inside):
            out[inside] = self._log_density_rows(points[inside])
        if np.any(np.isnan(out)) or np.any(out == np.inf):
            validate_log_density(out[np.isnan(out) | (out == np.inf)][0])
        return out

    def gradient(self, point: FloatArray) -> FloatArray:
        """Gradient of the log-density. Only available when `gradient_available`."""
        raise BatonUnsupportedOperation(f"{self!r} does not provide a gradient.")

    def sample_iid(self, rng: RngNode, n: int) -> FloatArray:
        """`n` exact independent draws as an n x d array."""
        raise BatonUnsupportedOperation(f"{self!r} does not support iid sampling.")

    def marginal_variances(self) -> Optional[FloatArray]:
        """Per-dimension variances when known in closed form, else None."""
        return None


class FunctionDensity(DensityModel):
    def __init__(
        self,
        space: ParameterSpace,
        fn: Callable[[FloatArray], float],
        /,
        *,
        role: DensityRole = DensityRole.generic,
        gradient: Optional[Callable[[FloatArray], FloatArray]] = None,
    ) -> None:
        """
        Wraps a plain callable as a density.

        :param fn: (required) Maps a point to its log-density. Must be pure.
        :param gradient: (optional) Maps a point to the gradient of `fn`.
        """
        super().__init__(space, role=role)
        self._fn = fn
        self._gradient = gradient
        self.gradient_available = gradient is not None

    def _log_density(self, x: FloatArray) -> float:
        return float(self._fn(x))

    def gradient(self, point: FloatArray) -> FloatArray:
        if self._gradient is None:
            return super().gradient(point)
        return np.asarray(self._gradient(point), dtype=np.float64)


class PosteriorDensity(DensityModel):
    def __init__(self, likelihood: DensityModel, prior: DensityModel) -> None:
        super().__init__(prior.space, role=DensityRole.posterior)
        self.likelihood = likelihood
        self.prior = prior
        self.gradient_available = likelihood.gradient_available and prior.gradient_available
        self.differentiable = likelihood.differentiable and prior.differentiable

    def _log_density(self, x: FloatArray) -> float:
        log_prior = self.prior._log_density(x)
        if log_prior == -np.inf:
            return -np.inf
        return self.likelihood._log_density(x) + log_prior

    def _log_density_rows(self, xs: FloatArray) -> FloatArray:
        log_prior = self.prior._log_density_rows(xs)
        out = np.full(xs.shape[0], -np.inf)
        finite = log_prior > -np.inf
        if np.any(finite):
            out[finite] = self.likelihood._log_density_rows(xs[finite]) + log_prior[finite]
        return out

    def gradient(self, point: FloatArray) -> FloatArray:
        if not self.gradient_available:
            return super().gradient(point)
        return self.likelihood.gradient(point) + self.prior.gradient(point)

    def marginal_variances(self) -> Optional[FloatArray]:
        return self.prior.marginal_variances()


def log_density(model: DensityModel, point: Sequence[float] | FloatArray) -> float:
    """
    :returns: The log-density of `model` at `point`; `-inf` outside the bounds.
    :raises: BatonContractViolation if `point` does not have `model.dims` entries.
    """
    return model.log_density(point)


def build_posterior(likelihood: DensityModel, prior: DensityModel) -> DensityModel:
    """Posterior whose log-density is the pointwise sum of both log-densities."""
    if likelihood.space != prior.space:
        raise BatonSpaceMismatch(
            f"Likelihood space {likelihood.space!r} differs from prior space {prior.space!r}."
        )
    return PosteriorDensity(likelihood, prior)


def prior_iid_sample(prior: DensityModel, rng: RngNode, n: int) -> SampleBatch:
    """`n` independent draws with unit weights and recorded log-densities."""
    if not prior.iid_capable:
        raise BatonUnsupportedOperation(f"{prior!r} does not support iid sampling.")
    if n == 0:
        return SampleBatch.empty(prior.dims, prior.space.names)
    variates = prior.sample_iid(rng, n)
    return SampleBatch.from_iid(
        variates, prior.log_density_batch(variates), prior.space.names
    )
