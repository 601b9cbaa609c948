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
"""
```py
import baton

# densities and sampling:
target = baton.make_test_density("funnel", 2)
batch = baton.sample_posterior(target, baton.BurninConfig(), baton.root_rng(42))

# diagnostics:
from baton import diagnostics
diagnostics.ess(batch)

# evidence:
z = baton.integrate_harmonic(batch, target)

# worked example, test suite:
from baton import physics, testsuite
```
"""
from typing import Sequence

from baton.api._about import __version__
from baton.densities import (
    DensityModel,
    ParameterSpace,
    build_posterior,
    make_test_density,
    prior_iid_sample,
)
from baton.evidence import bayes_factor, choose_region, integrate_harmonic, mc_cubature
from baton.rng import RngNode, root_rng
from baton.samplers import BurninConfig, sample_posterior
from baton.samples import SampleBatch, read_samples, write_samples

__all__: Sequence[str] = (
    "__version__",
    "ParameterSpace",
    "DensityModel",
    "build_posterior",
    "make_test_density",
    "prior_iid_sample",
    "RngNode",
    "root_rng",
    "BurninConfig",
    "sample_posterior",
    "SampleBatch",
    "read_samples",
    "write_samples",
    "choose_region",
    "integrate_harmonic",
    "mc_cubature",
    "bayes_factor",
)
