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
from typing import Any, Mapping, Optional, Sequence, cast

import numpy as np
import numpy.typing as npt
from scipy import linalg, stats

from baton.densities.model import DensityModel
from baton.densities.space import ParameterSpace
from baton.exceptions import (
    BatonConfigError,
    BatonContractViolation,
    BatonUnsupportedOperation,
    validate_config_keys,
)
from baton.properties.options import TestDensityName
from baton.rng import RngNode

__all__: Sequence[str] = (
    "TestDensity",
    "NormalTestDensity",
    "MultiCauchyDensity",
    "FunnelDensity",
    "make_test_density",
    "density_from_mapping",
)

FloatArray = npt.NDArray[np.float64]

_LOG_2PI = float(np.log(2 * np.pi))
_LOG_HUGE = float(np.log(np.finfo(np.float64).max)) - 1.0

_NORMAL_MEAN = (15.0, 10.0)
_NORMAL_VAR = (2.25, 6.25)


class TestDensity(DensityModel):
    """
    Normalized built-in target with known reference values.

    `true_mode`, `true_mean` and `true_variance` are None where undefined.
    `marginal_log_density(k, x)` evaluates the 1D marginal of dimension k on an array.
    """

    __test__ = False

    name: str = ""
    iid_capable = True
    gradient_available = True

    def __init__(self, dims: int) -> None:
        if dims < 1:
            raise BatonContractViolation(f"dims must be >= 1, got {dims}.")
        super().__init__(ParameterSpace.unbounded(dims))

    def __repr__(self) -> str:
        return f"{self.__class__.__name__}(dims={self.dims})"

    def params(self) -> dict[str, Any]:
        return {"name": self.name, "dims": self.dims}

    @property
    def true_mode(self) -> Optional[FloatArray]:
        return None

    @property
    def true_mean(self) -> Optional[FloatArray]:
        return None

    @property
    def true_variance(self) -> Optional[FloatArray]:
        return None

    def marginal_variances(self) -> Optional[FloatArray]:
        return self.true_variance

    def has_marginal(self, k: int) -> bool:
        return 0 <= k < self.dims

    def marginal_log_density(self, k: int, x: FloatArray) -> FloatArray:
        raise BatonUnsupportedOperation(f"{self!r}: no closed-form marginal for dim {k}.")

    def truncation_box(self) -> tuple[FloatArray, FloatArray]:
        raise BatonUnsupportedOperation(f"{self!r}: no finite truncation box.")


class NormalTestDensity(TestDensity):
    name = "normal"

    def __init__(
        self,
        dims: int,
        mean: Optional[Sequence[float]] = None,
        var: Optional[Sequence[float]] = None,
        cov: Optional[Sequence[Sequence[float]]] = None,
    ) -> None:
        """
        Multivariate normal. Mean and variances default to (15, 10) and (2.25, 6.25),
        repeated over higher dimensions. A full covariance overrides `var`.
        """
        super().__init__(dims)
        self.mean = (
            np.asarray(mean, dtype=np.float64)
            if mean is not None
            else np.resize(np.array(_NORMAL_MEAN), dims)
        )
        if cov is not None:
            self.cov = np.asarray(cov, dtype=np.float64)
        else:
            v = (
                np.asarray(var, dtype=np.float64)
                if var is not None
                else np.resize(np.array(_NORMAL_VAR), dims)
            )
            self.cov = np.diag(v)
        if self.mean.shape != (dims,) or self.cov.shape != (dims, dims):
            raise BatonContractViolation("mean/covariance do not match dims.")
        try:
            self._chol = linalg.cholesky(self.cov, lower=True)
        except linalg.LinAlgError as e:
            raise BatonContractViolation("Covariance is not positive definite.") from e
        self._log_norm = -0.5 * dims * _LOG_2PI - float(np.sum(np.log(np.diag(self._chol))))

    def params(self) -> dict[str, Any]:
        return {**super().params(), "mean": self.mean.tolist(), "cov": self.cov.tolist()}

    def _log_density_rows(self, xs: FloatArray) -> FloatArray:
        z = linalg.solve_triangular(self._chol, (xs - self.mean).T, lower=True)
        out: FloatArray = self._log_norm - 0.5 * np.sum(z**2, axis=0)
        return out

    def _log_density(self, x: FloatArray) -> float:
        return float(self._log_density_rows(x[None, :])[0])

    def gradient(self, point: FloatArray) -> FloatArray:
        grad: FloatArray = -linalg.cho_solve((self._chol, True), point - self.mean)
        return grad

    def sample_iid(self, rng: RngNode, n: int) -> FloatArray:
        z = rng.generator.standard_normal((n, self.dims))
        draws: FloatArray = self.mean + z @ self._chol.T
        return draws

    @property
    def true_mode(self) -> FloatArray:
        return self.mean.copy()

    @property
    def true_mean(self) -> FloatArray:
        return self.mean.copy()

    @property
    def true_variance(self) -> FloatArray:
        return np.diag(self.cov).copy()

    def marginal_log_density(self, k: int, x: FloatArray) -> FloatArray:
        logpdf: FloatArray = stats.norm.logpdf(x, self.mean[k], np.sqrt(self.cov[k, k]))
        return logpdf

    def truncation_box(self, n_sigma: float = 8.0) -> tuple[FloatArray, FloatArray]:
        sd = np.sqrt(np.diag(self.cov))
        return self.mean - n_sigma * sd, self.mean + n_sigma * sd


class MultiCauchyDensity(TestDensity):
    name = "multi_cauchy"

    def __init__(self, dims: int, mu: float = 5.0, sigma: float = 1.0) -> None:
        """
        Per-dimension symmetric mixture 0.5 * [Cauchy(x | mu, sigma) + Cauchy(x | -mu, sigma)].
        Variance is undefined; the mean is zero by symmetry.
        """
        super().__init__(dims)
        if sigma <= 0:
            raise BatonContractViolation(f"sigma must be positive, got {sigma}.")
        self.mu = float(mu)
        self.sigma = float(sigma)

    def params(self) -> dict[str, Any]:
        return {**super().params(), "mu": self.mu, "sigma": self.sigma}

    def _component_pdf(self, y: FloatArray) -> FloatArray:
        pdf: FloatArray = 1.0 / (np.pi * self.sigma * (1.0 + (y / self.sigma) ** 2))
        return pdf

    def _marginal(self, x: FloatArray) -> FloatArray:
        # y**2 is sign-blind, so f(x) == f(-x) holds bit for bit.
        pair = self._component_pdf(x - self.mu) + self._component_pdf(x + self.mu)
        return np.log(0.5 * pair)

    def _log_density_rows(self, xs: FloatArray) -> FloatArray:
        out: FloatArray = np.sum(self._marginal(xs), axis=1)
        return out

    def _log_density(self, x: FloatArray) -> float:
        return float(np.sum(self._marginal(x)))

    def gradient(self, point: FloatArray) -> FloatArray:
        a, b = point - self.mu, point + self.mu
        ca, cb = self._component_pdf(a), self._component_pdf(b)
        s2 = self.sigma**2
        da = -2 * a / s2 * ca / (1 + a**2 / s2)
        db = -2 * b / s2 * cb / (1 + b**2 / s2)
        grad: FloatArray = (da + db) / (ca + cb)
        return grad

    def sample_iid(self, rng: RngNode, n: int) -> FloatArray:
        gen = rng.generator
        centres = np.where(gen.random((n, self.dims)) < 0.5, self.mu, -self.mu)
        draws: FloatArray = centres + self.sigma * gen.standard_cauchy((n, self.dims))
        return draws

    @property
    def true_mode(self) -> FloatArray:
        return np.full(self.dims, self.mu)

    @property
    def true_mean(self) -> FloatArray:
        return np.zeros(self.dims)

    def marginal_log_density(self, k: int, x: FloatArray) -> FloatArray:
        return self._marginal(np.asarray(x, dtype=np.float64))


class FunnelDensity(TestDensity):
    name = "funnel"

    def __init__(self, dims: int, a: float = 1.0, b: float = 1.0) -> None:
        """
        N(x_1 | 0, a^2) * prod_{i>=2} N(x_i | 0, exp(2 b x_1)).

        ---
        :param dims: (required) Number of dimensions, at least 2.
        :param a: (optional) Scale of the top-level coordinate.
        :param b: (optional) Coupling of the lower coordinates' scale to x_1.
        """
        if dims < 2:
            raise BatonContractViolation(f"The funnel needs dims >= 2, got {dims}.")
        super().__init__(dims)
        if a <= 0:
            raise BatonContractViolation(f"a must be positive, got {a}.")
        self.a = float(a)
        self.b = float(b)

    def params(self) -> dict[str, Any]:
        return {**super().params(), "a": self.a, "b": self.b}

    def _log_density_rows(self, xs: FloatArray) -> FloatArray:
        top = xs[:, 0]
        rest = xs[:, 1:]
        k = self.dims - 1
        log_top = -0.5 * _LOG_2PI - np.log(self.a) - 0.5 * (top / self.a) ** 2
        # log of 0.5 * sum(rest^2) * exp(-2 b x_1); -inf when rest is zero
        with np.errstate(divide="ignore"):
            log_quad = np.log(0.5 * np.sum(rest**2, axis=1)) - 2 * self.b * top
        quad = np.where(
            log_quad > _LOG_HUGE, np.inf, np.exp(np.minimum(log_quad, _LOG_HUGE))
        )
        out: FloatArray = log_top - 0.5 * k * _LOG_2PI - k * self.b * top - quad
        return out

    def _log_density(self, x: FloatArray) -> float:
        return float(self._log_density_rows(x[None, :])[0])

    def gradient(self, point: FloatArray) -> FloatArray:
        top, rest = float(point[0]), point[1:]
        # exponents clamped so the gradient stays finite deep in the neck
        log_scale = min(-2 * self.b * top, _LOG_HUGE)
        ss = float(np.sum(rest**2))
        pull = 0.0
        if ss > 0 and self.b != 0:
            log_pull = min(math.log(abs(self.b) * ss) + log_scale, _LOG_HUGE)
            pull = math.copysign(math.exp(log_pull), self.b)
        grad = np.empty(self.dims)
        grad[0] = -top / self.a**2 - (self.dims - 1) * self.b + pull
        with np.errstate(divide="ignore"):
            log_rest = np.log(np.abs(rest)) + log_scale
        grad[1:] = -np.sign(rest) * np.exp(np.minimum(log_rest, _LOG_HUGE))
        return grad

    def sample_iid(self, rng: RngNode, n: int) -> FloatArray:
        z = rng.generator.standard_normal((n, self.dims))
        top = self.a * z[:, 0]
        draws = np.empty((n, self.dims))
        draws[:, 0] = top
        draws[:, 1:] = z[:, 1:] * np.exp(self.b * top)[:, None]
        return draws

    @property
    def true_mode(self) -> FloatArray:
        mode = np.zeros(self.dims)
        mode[0] = -(self.dims - 1) * self.b * self.a**2
        return mode

    @property
    def true_mean(self) -> FloatArray:
        return np.zeros(self.dims)

    @property
    def true_variance(self) -> FloatArray:
        var = np.full(self.dims, np.exp(2 * self.b**2 * self.a**2))
        var[0] = self.a**2
        return var

    def has_marginal(self, k: int) -> bool:
        return k == 0

    def marginal_log_density(self, k: int, x: FloatArray) -> FloatArray:
        if k != 0:
            return super().marginal_log_density(k, x)
        logpdf: FloatArray = stats.norm.logpdf(x, 0.0, self.a)
        return logpdf

    def truncation_box(self, n_sigma: float = 6.0) -> tuple[FloatArray, FloatArray]:
        half = np.full(self.dims, n_sigma * np.exp(abs(self.b) * n_sigma * self.a))
        half[0] = n_sigma * self.a
        return -half, half


_PARAM_KEYS: Mapping[TestDensityName, tuple[str, ...]] = {
    "normal": ("mean", "var", "cov"),
    "multi_cauchy": ("mu", "sigma"),
    "funnel": ("a", "b"),
}


def make_test_density(
    name: str, dims: int, params: Optional[Mapping[str, Any]] = None
) -> TestDensity:
    """
    Build a built-in test density by name.

    :param name: (required) One of `normal`, `multi_cauchy`, `funnel`.
    :param dims: (required) Number of dimensions (`funnel` needs at least 2).
    :param params: (optional) Shape parameters, see each density's constructor.
    :raises: BatonConfigError on an unknown name or parameter.
    """
    params = dict(params or {})
    if name not in _PARAM_KEYS:
        raise BatonConfigError(
            f"Unknown test density {name!r}. Choose one of {sorted(_PARAM_KEYS)}."
        )
    known = cast(TestDensityName, name)
    validate_config_keys(params, _PARAM_KEYS[known], name=name)

    match name:
        case "normal":
            return NormalTestDensity(dims, **params)
        case "multi_cauchy":
            return MultiCauchyDensity(dims, **params)
        case _:
            return FunnelDensity(dims, **params)


def density_from_mapping(mapping: Mapping[str, Any]) -> TestDensity:
    """e.g. `{"name": "funnel", "dims": 4, "a": 1.0, "b": 1.0}`."""
    mapping = dict(mapping)
    try:
        name = str(mapping.pop("name"))
        dims = int(mapping.pop("dims", 2))
    except KeyError as e:
        raise BatonConfigError("A model object needs a 'name' key.") from e
    return make_test_density(name, dims, mapping)


