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
from typing import Sequence

import numpy as np
import numpy.typing as npt

from baton.densities import DensityModel
from baton.exceptions import BatonContractViolation
from baton.rng import RngNode
from baton.samplers.state import ChainState, MhConfig, TunerState, regularized_cholesky
from baton.samples import SampleBatch

__all__: Sequence[str] = (
    "acceptance_probability",
    "metropolis_accept",
    "propose",
    "mh_step",
    "adapt_proposal",
)

FloatArray = npt.NDArray[np.float64]


def acceptance_probability(log_pi_ratio: float, log_g_ratio: float = 0.0) -> float:
    """
    min(1, pi(x') g(x | x') / (pi(x) g(x' | x))), from log-ratios.

    `log_g_ratio` is log g(x | x') - log g(x' | x); it is 0 for symmetric proposals.
    """
    log_a = log_pi_ratio + log_g_ratio
    if math.isnan(log_a):
        return 0.0
    return 1.0 if log_a >= 0 else math.exp(log_a)


def metropolis_accept(log_ratio: float, u: float) -> bool:
    """Accept when u < min(1, exp(log_ratio)) for a uniform draw u in [0, 1)."""
    return u < acceptance_probability(log_ratio)


def propose(position: FloatArray, tuner: TunerState, gen: np.random.Generator) -> FloatArray:
    """Multivariate Student-t draw centred on `position` with scale matrix c^2 * Sigma."""
    z = gen.standard_normal(position.shape[0])
    w = gen.chisquare(tuner.nu)
    step = tuner.chol @ z * math.sqrt(tuner.nu / w) if w > 0 else tuner.chol @ z
    out: FloatArray = position + tuner.scale * step
    return out


def mh_step(
    state: ChainState, target: DensityModel, tuner: TunerState, rng: RngNode
) -> ChainState:
    """
    One Metropolis-Hastings transition.

    The proposal and the acceptance draw both come from `rng`, the step's own stream.
    A proposal outside the support is rejected. On reject the current position's
    multiplicity grows by one. `tuner` counts the proposal.

    :raises: BatonNonFiniteDensity if the target returns NaN or +inf.
    """
    if state.log_target == -np.inf:
        raise BatonContractViolation(f"Chain {state.chain_id} sits outside the support.")
    gen = rng.generator
    proposal = propose(state.position, tuner, gen)
    log_prop = target.log_density(proposal)
    u = float(gen.random())

    prob = acceptance_probability(log_prop - state.log_target)
    accepted = u < prob
    tuner.record(accepted)
    if accepted:
        return state.moved(proposal, log_prop, prob)
    return state.stayed(prob)


def _distinct_rows(samples: SampleBatch) -> int:
    return int(np.unique(samples.variates, axis=0).shape[0])


def adapt_proposal(
    tuner: TunerState, cycle_samples: SampleBatch, cfg: MhConfig = MhConfig()
) -> TunerState:
    """
    End-of-cycle update of a chain's proposal.

    Sigma becomes the weighted covariance of `cycle_samples`; it is kept unchanged when
    the cycle holds no more distinct points than dimensions. The scale factor moves by
    `cfg.beta` toward the acceptance band and stays inside [scale_min, scale_max].
    The returned tuner has fresh acceptance counters.

    :raises: BatonSingularCovariance if Sigma is not positive definite after
        regularization.
    """
    if cycle_samples.n == 0:
        raise BatonContractViolation("adapt_proposal needs a nonempty cycle.")
    alpha = tuner.acceptance_rate
    cov = tuner.cov
    if _distinct_rows(cycle_samples) > cycle_samples.dims:
        candidate = cycle_samples.covariance()
        regularized_cholesky(candidate)
        cov = candidate

    scale = tuner.scale
    if alpha < cfg.alpha_min:
        scale = max(scale / cfg.beta, cfg.scale_min)
    elif alpha > cfg.alpha_max:
        scale = min(scale * cfg.beta, cfg.scale_max)
    tuned = cfg.alpha_min <= alpha <= cfg.alpha_max
    return TunerState(cov, scale, tuner.nu, tuned=tuned)
