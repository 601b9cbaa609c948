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

from baton.densities import DensityModel
from baton.exceptions import BatonContractViolation, BatonUnsupportedOperation
from baton.properties.options import GradientMode

__all__: Sequence[str] = ("GradientProvider", "fd_gradient")

FloatArray = npt.NDArray[np.float64]


def fd_gradient(target: DensityModel, q: FloatArray, h: float = 1e-6) -> FloatArray:
    """
    Central-difference gradient of the log-density. The step in dimension k is
    h * max(1, |q_k|).

    :raises: BatonContractViolation if q +- h leaves the support.
    """
    q = np.asarray(q, dtype=np.float64)
    grad = np.empty(q.shape[0])
    for k in range(q.shape[0]):
        hk = h * max(1.0, abs(q[k]))
        up, down = q.copy(), q.copy()
        up[k] += hk
        down[k] -= hk
        f_up, f_down = target.log_density(up), target.log_density(down)
        if f_up == -np.inf or f_down == -np.inf:
            raise BatonContractViolation(
                f"Finite-difference stencil leaves the support in dimension {k + 1}."
            )
        grad[k] = (f_up - f_down) / (up[k] - down[k])
    return grad


class GradientProvider:
    def __init__(
        self, target: DensityModel, mode: GradientMode = GradientMode.user, fd_step: float = 1e-6
    ) -> None:
        """
        Gradient source for HMC.

        ---
        :param mode: (optional) `user` takes the target's analytic gradient, `fd` uses
                     central differences.
        :param fd_step: (optional) Relative finite-difference step.
        """
        mode = GradientMode(mode)
        if mode is GradientMode.user and not target.gradient_available:
            raise BatonUnsupportedOperation(
                f"{target!r} has no analytic gradient. Use the finite-difference mode."
            )
        self.target = target
        self.mode = mode
        self.fd_step = fd_step

    def __repr__(self) -> str:
        return f"GradientProvider(mode={self.mode.value})"

    def __call__(self, q: FloatArray) -> FloatArray:
        match self.mode:
            case GradientMode.user:
                grad = self.target.gradient(q)
            case GradientMode.fd:
                grad = fd_gradient(self.target, q, self.fd_step)
        if grad.shape != q.shape:
            raise BatonContractViolation(
                f"Gradient has shape {grad.shape}, expected {q.shape}."
            )
        return grad
