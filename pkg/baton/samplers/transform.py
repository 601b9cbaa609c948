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

from typing import Sequence

import numpy as np
import numpy.typing as npt
from scipy import special

from baton.densities import DensityModel, ParameterSpace

__all__: Sequence[str] = ("UnconstrainedDensity",)

FloatArray = npt.NDArray[np.float64]

_IDENTITY, _LOWER, _UPPER, _BOTH = 0, 1, 2, 3


class UnconstrainedDensity(DensityModel):
    """
    A density re-expressed on R^d.

    Dimensions bounded on one side use x = lo + exp(y) (or hi - exp(y)); dimensions
    bounded on both sides use x = lo + (hi - lo) * expit(y). The log-density includes
    the log-Jacobian of the map, so sampling y and mapping back yields draws of the
    original density. Unbounded dimensions pass through unchanged.
    """

    def __init__(self, base: DensityModel) -> None:
        super().__init__(ParameterSpace.unbounded(base.dims, base.space.names), role=base.role)
        self.base = base
        lo, hi = base.space.lower, base.space.upper
        kind = np.full(base.dims, _IDENTITY)
        kind[np.isfinite(lo) & ~np.isfinite(hi)] = _LOWER
        kind[~np.isfinite(lo) & np.isfinite(hi)] = _UPPER
        kind[np.isfinite(lo) & np.isfinite(hi)] = _BOTH
        self._kind = kind
        self._lo = np.where(np.isfinite(lo), lo, 0.0)
        self._hi = np.where(np.isfinite(hi), hi, 0.0)
        self.gradient_available = base.gradient_available
        self.differentiable = base.differentiable

    @property
    def is_identity(self) -> bool:
        return bool(np.all(self._kind == _IDENTITY))

    def to_unconstrained(self, x: FloatArray) -> FloatArray:
        y = np.array(x, dtype=np.float64)
        k = self._kind
        m = k == _LOWER
        y[m] = np.log(np.maximum(x[m] - self._lo[m], np.finfo(float).tiny))
        m = k == _UPPER
        y[m] = np.log(np.maximum(self._hi[m] - x[m], np.finfo(float).tiny))
        m = k == _BOTH
        if np.any(m):
            width = self._hi[m] - self._lo[m]
            t = np.clip((x[m] - self._lo[m]) / width, 1e-300, 1 - 1e-16)
            y[m] = special.logit(t)
        return y

    def to_constrained(self, y: FloatArray) -> FloatArray:
        x = np.array(y, dtype=np.float64)
        k = self._kind
        m = k == _LOWER
        x[m] = self._lo[m] + np.exp(y[m])
        m = k == _UPPER
        x[m] = self._hi[m] - np.exp(y[m])
        m = k == _BOTH
        x[m] = self._lo[m] + (self._hi[m] - self._lo[m]) * special.expit(y[m])
        return x

    def log_jacobian(self, y: FloatArray) -> float:
        k = self._kind
        one_sided = (k == _LOWER) | (k == _UPPER)
        both = k == _BOTH
        total = float(np.sum(y[one_sided]))
        if np.any(both):
            yb = y[both]
            total += float(
                np.sum(
                    np.log(self._hi[both] - self._lo[both])
                    + special.log_expit(yb)
                    + special.log_expit(-yb)
                )
            )
        return total

    def _log_density(self, y: FloatArray) -> float:
        if self.is_identity:
            return self.base.log_density(y)
        log_base = self.base.log_density(self.to_constrained(y))
        if log_base == -np.inf:
            return -np.inf
        return log_base + self.log_jacobian(y)

    def gradient(self, point: FloatArray) -> FloatArray:
        """Chain rule through the map plus the gradient of the log-Jacobian."""
        x = self.to_constrained(point)
        grad_x = self.base.gradient(x)
        if self.is_identity:
            return grad_x
        k = self._kind
        dx_dy = np.ones(self.dims)
        dlogj = np.zeros(self.dims)
        m = k == _LOWER
        dx_dy[m] = np.exp(point[m])
        dlogj[m] = 1.0
        m = k == _UPPER
        dx_dy[m] = -np.exp(point[m])
        dlogj[m] = 1.0
        m = k == _BOTH
        s = special.expit(point[m])
        dx_dy[m] = (self._hi[m] - self._lo[m]) * s * (1 - s)
        dlogj[m] = 1.0 - 2.0 * s
        grad: FloatArray = grad_x * dx_dy + dlogj
        return grad
