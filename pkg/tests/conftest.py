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

import numpy as np
import numpy.typing as npt
import pytest

from baton.densities import NormalTestDensity, UniformDensity
from baton.rng import RngNode, root_rng
from baton.samples import SampleBatch
from baton.samplers import BurninConfig

FloatArray = npt.NDArray[np.float64]


@pytest.fixture
def rng() -> RngNode:
    return root_rng(20230517)


@pytest.fixture
def normal2d() -> NormalTestDensity:
    return NormalTestDensity(2)


@pytest.fixture
def unit_uniform() -> UniformDensity:
    return UniformDensity([0.0], [1.0])


@pytest.fixture
def quick_burnin() -> BurninConfig:
    return BurninConfig(n_chains=4, n_final_samples=2_000)


def iid_batch(draws: FloatArray, log_densities: FloatArray | None = None) -> SampleBatch:
    draws = np.atleast_2d(np.asarray(draws, dtype=np.float64))
    if log_densities is None:
        log_densities = np.zeros(draws.shape[0])
    return SampleBatch.from_iid(draws, log_densities)
