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
from typing import Sequence

from baton.samplers.burnin import (
    BurninResult,
    MCMCSampler,
    SamplingResult,
    initial_state,
    run_burnin,
    run_sampling,
    sample_posterior,
)
from baton.samplers.gradient import GradientProvider, fd_gradient
from baton.samplers.hmc import (
    DualAveraging,
    HmcHyper,
    adapt_mass,
    adapt_step_size,
    hamiltonian,
    hmc_step,
    leapfrog,
)
from baton.samplers.mh import (
    acceptance_probability,
    adapt_proposal,
    metropolis_accept,
    mh_step,
    propose,
)
from baton.samplers.state import (
    BurninConfig,
    ChainState,
    HmcConfig,
    MhConfig,
    TunerState,
    regularized_cholesky,
)
from baton.samplers.transform import UnconstrainedDensity

__all__: Sequence[str] = (
    "BurninConfig",
    "MhConfig",
    "HmcConfig",
    "ChainState",
    "TunerState",
    "regularized_cholesky",
    "acceptance_probability",
    "metropolis_accept",
    "propose",
    "mh_step",
    "adapt_proposal",
    "DualAveraging",
    "HmcHyper",
    "leapfrog",
    "hamiltonian",
    "hmc_step",
    "adapt_step_size",
    "adapt_mass",
    "GradientProvider",
    "fd_gradient",
    "UnconstrainedDensity",
    "MCMCSampler",
    "BurninResult",
    "SamplingResult",
    "initial_state",
    "run_burnin",
    "run_sampling",
    "sample_posterior",
)
