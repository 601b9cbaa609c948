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
from scipy import optimize

from baton.densities import DensityModel
from baton.exceptions import BatonContractViolation
from baton.samples import SampleBatch

__all__: Sequence[str] = ("refine_mode", "global_mode")

FloatArray = npt.NDArray[np.float64]

_MAX_EVALS = 10_000


def refine_mode(
    target: DensityModel, start: Sequence[float] | FloatArray, *, max_evals: int = _MAX_EVALS
) -> FloatArray:
    """
    Nelder-Mead maximization of the log-density from `start`. Stops when the simplex
    shrinks below 1e-8 relative to the scale of `start` or after `max_evals`
    evaluations. Never returns a point worse than `start`.

    :raises: BatonContractViolation if `start` is outside the support.
    """
    x0 = np.asarray(start, dtype=np.float64)
    f0 = target.log_density(x0)
    if f0 == -np.inf:
        raise BatonContractViolation("refine_mode must start inside the support.")

    def negative(x: FloatArray) -> float:
        return -target.log_density(x)

    scale = max(1.0, float(np.max(np.abs(x0))))
    result = optimize.minimize(
        negative,
        x0,
        method="Nelder-Mead",
        options={
            "xatol": 1e-8 * scale,
            "fatol": 1e-12,
            "maxfev": max_evals,
            "maxiter": max_evals,
            "adaptive": True,
        },
    )
    best: FloatArray = np.asarray(result.x, dtype=np.float64)
    if not np.isfinite(result.fun) or -float(result.fun) < f0:
        return x0.copy()
    return best


def global_mode(target: DensityModel, batch: SampleBatch) -> FloatArray:
    """Refined mode, started from the sample with the largest log-density."""
    return refine_mode(target, batch.mode_sample())
