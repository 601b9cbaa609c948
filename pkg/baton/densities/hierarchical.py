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

from typing import Callable, Sequence

import numpy as np
import numpy.typing as npt

from baton.densities.model import DensityModel
from baton.densities.space import ParameterSpace
from baton.exceptions import BatonContractViolation, BatonUnsupportedOperation
from baton.properties.options import DensityRole
from baton.rng import RngNode

__all__: Sequence[str] = ("HierarchicalPrior",)

FloatArray = npt.NDArray[np.float64]


class HierarchicalPrior(DensityModel):
    """
    Layered prior: a hyper-prior over the leading parameters and a conditional prior
    over the remaining ones, built from the hyperparameter values.

        log p(h, x) = log p_hyper(h) + log p_conditional(x | h)

    iid draws are ancestral: hyperparameters first, then one conditional draw per
    hyperparameter row. Gradients are not offered.
    """

    gradient_available = False
    differentiable = False

    def __init__(
        self,
        hyper_prior: DensityModel,
        conditional: Callable[[FloatArray], DensityModel],
        conditional_space: ParameterSpace,
    ) -> None:
        super().__init__(hyper_prior.space.concat(conditional_space), role=DensityRole.prior)
        self.hyper_prior = hyper_prior
        self.conditional = conditional
        self.conditional_space = conditional_space
        self.iid_capable = hyper_prior.iid_capable
        self._split = hyper_prior.dims

    def _conditional_at(self, hyper: FloatArray) -> DensityModel:
        model = self.conditional(hyper)
        if model.dims != self.conditional_space.dims:
            raise BatonContractViolation(
                f"Conditional prior has {model.dims} dimension(s), "
                f"expected {self.conditional_space.dims}."
            )
        return model

    def _log_density(self, x: FloatArray) -> float:
        hyper, rest = x[: self._split], x[self._split :]
        log_hyper = self.hyper_prior._log_density(hyper)
        if log_hyper == -np.inf:
            return -np.inf
        return log_hyper + self._conditional_at(hyper).log_density(rest)

    def sample_iid(self, rng: RngNode, n: int) -> FloatArray:
        if not self.iid_capable:
            raise BatonUnsupportedOperation(f"{self!r}: hyper-prior is not iid-capable.")
        hyper = self.hyper_prior.sample_iid(rng.partition(0), n)
        stream = rng.partition(1)
        rest = np.empty((n, self.conditional_space.dims))
        for i, h in enumerate(hyper):
            rest[i] = self._conditional_at(h).sample_iid(stream, 1)[0]
        return np.hstack([hyper, rest])
