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
from dataclasses import dataclass, replace
from typing import Callable, Sequence

import numpy as np
import numpy.typing as npt

from baton.densities import DensityModel
from baton.exceptions import BatonContractViolation, BatonTrajectoryDivergence
from baton.rng import RngNode
from baton.samplers.state import ChainState, HmcConfig
from baton.samplers.transform import UnconstrainedDensity

__all__: Sequence[str] = (
    "DualAveraging",
    "HmcHyper",
    "leapfrog",
    "hamiltonian",
    "hmc_step",
    "adapt_step_size",
    "adapt_mass",
)

FloatArray = npt.NDArray[np.float64]
GradFn = Callable[[FloatArray], FloatArray]

# Dual-averaging constants (shrinkage, iteration offset, averaging decay).
_GAMMA = 0.05
_T0 = 10.0
_KAPPA = 0.75


@dataclass(frozen=True)
class DualAveraging:
    mu: float
    h_bar: float = 0.0
    log_eps_bar: float = 0.0
    t: int = 0

    @classmethod
    def start(cls, step_size: float) -> DualAveraging:
        log_eps = math.log(step_size)
        return cls(mu=log_eps, log_eps_bar=log_eps)


@dataclass(frozen=True)
class HmcHyper:
    step_size: float
    n_leapfrog: int
    mass_diag: FloatArray
    target_accept: float
    dual_avg: DualAveraging
    jitter: float = 0.0

    def __post_init__(self) -> None:
        if not self.step_size > 0:
            raise BatonContractViolation(f"step_size must be > 0, got {self.step_size}.")
        if self.n_leapfrog < 1:
            raise BatonContractViolation("n_leapfrog must be >= 1.")
        if not np.all(self.mass_diag > 0):
            raise BatonContractViolation("mass_diag entries must be > 0.")
        if not 0.0 <= self.jitter < 1.0:
            raise BatonContractViolation(f"jitter must lie in [0, 1), got {self.jitter}.")

    @classmethod
    def initial(cls, dims: int, cfg: HmcConfig) -> HmcHyper:
        return cls(
            cfg.step_size,
            cfg.n_leapfrog,
            np.ones(dims),
            cfg.target_accept,
            DualAveraging.start(cfg.step_size),
            cfg.jitter,
        )

    def frozen(self) -> HmcHyper:
        """Step size fixed at the dual-averaging mean."""
        return replace(self, step_size=math.exp(self.dual_avg.log_eps_bar))

    def snapshot(self) -> dict[str, object]:
        return {
            "step_size": self.step_size,
            "n_leapfrog": self.n_leapfrog,
            "mass_diag": self.mass_diag,
            "target_accept": self.target_accept,
            "jitter": self.jitter,
        }


def leapfrog(
    q: FloatArray,
    p: FloatArray,
    eps: float,
    n_steps: int,
    grad: GradFn,
    mass_diag: FloatArray,
) -> tuple[FloatArray, FloatArray]:
    """
    `n_steps` leapfrog steps of Hamilton's equations for H = -log pi(q) + sum p^2 / 2m.
    `grad` returns the gradient of log pi.

    :raises: BatonTrajectoryDivergence on a non-finite intermediate state.
    """
    q = np.array(q, dtype=np.float64)
    p = np.array(p, dtype=np.float64)
    p = p + 0.5 * eps * grad(q)
    for i in range(n_steps):
        q = q + eps * p / mass_diag
        g = grad(q)
        if not (np.all(np.isfinite(q)) and np.all(np.isfinite(g))):
            raise BatonTrajectoryDivergence(f"Trajectory diverged at leapfrog step {i + 1}.")
        p = p + (eps if i < n_steps - 1 else 0.5 * eps) * g
    if not np.all(np.isfinite(p)):
        raise BatonTrajectoryDivergence("Momentum diverged.")
    return q, p


def hamiltonian(log_pi: float, p: FloatArray, mass_diag: FloatArray) -> float:
    return -log_pi + float(np.sum(p**2 / (2.0 * mass_diag)))


def hmc_step(
    state: ChainState,
    target: DensityModel,
    grad: GradFn,
    hyper: HmcHyper,
    rng: RngNode,
) -> ChainState:
    """
    One HMC transition with Gaussian momenta p ~ N(0, diag(mass)).

    The step size of each transition is drawn uniformly from
    step_size * [1 - jitter, 1 + jitter].

    `target` may be bounded; it is sampled through its unconstrained image and `grad`
    must then be the gradient on that image (see `GradientProvider`). A diverging
    trajectory is a rejection. `state.accept_prob` carries min(1, exp(-dH)).
    """
    image = target if isinstance(target, UnconstrainedDensity) else UnconstrainedDensity(target)
    gen = rng.generator
    y0 = image.to_unconstrained(state.position)
    log_pi0 = image.log_density(y0)
    p0 = gen.standard_normal(image.dims) * np.sqrt(hyper.mass_diag)
    eps = hyper.step_size * (1.0 + hyper.jitter * (2.0 * float(gen.random()) - 1.0))
    u = float(gen.random())

    try:
        y1, p1 = leapfrog(y0, p0, eps, hyper.n_leapfrog, grad, hyper.mass_diag)
        log_pi1 = image.log_density(y1)
    except (BatonTrajectoryDivergence, BatonContractViolation):
        return state.stayed(0.0)

    delta = hamiltonian(log_pi0, p0, hyper.mass_diag) - hamiltonian(
        log_pi1, p1, hyper.mass_diag
    )
    prob = 1.0 if delta >= 0 else (math.exp(delta) if math.isfinite(delta) else 0.0)
    if u < prob:
        x1 = image.to_constrained(y1)
        log_target = image.base.log_density(x1)
        if log_target > -np.inf:
            return state.moved(x1, log_target, prob)
    return state.stayed(prob)


def adapt_step_size(hyper: HmcHyper, observed_accept: float) -> HmcHyper:
    """
    Dual-averaging update toward `hyper.target_accept`. Low acceptance shrinks the
    step size and high acceptance grows it.
    """
    if not 0.0 <= observed_accept <= 1.0:
        raise BatonContractViolation(f"observed_accept must lie in [0, 1], got {observed_accept}.")
    da = hyper.dual_avg
    t = da.t + 1
    eta = 1.0 / (t + _T0)
    h_bar = (1.0 - eta) * da.h_bar + eta * (hyper.target_accept - observed_accept)
    log_eps = da.mu - math.sqrt(t) / _GAMMA * h_bar
    weight = t ** (-_KAPPA)
    log_eps_bar = weight * log_eps + (1.0 - weight) * da.log_eps_bar
    return replace(
        hyper,
        step_size=math.exp(log_eps),
        dual_avg=DualAveraging(da.mu, h_bar, log_eps_bar, t),
    )


def adapt_mass(hyper: HmcHyper, unconstrained_rows: FloatArray) -> HmcHyper:
    """
    Inverse of the regularized per-dimension sample variance becomes the mass; the
    dual-averaging window restarts from the current step size.
    """
    n = unconstrained_rows.shape[0]
    if n < 2:
        return hyper
    var = np.var(unconstrained_rows, axis=0, ddof=1)
    var = (n / (n + 5.0)) * var + 1e-3 * (5.0 / (n + 5.0))
    if not np.all(np.isfinite(var)) or np.any(var <= 0):
        return hyper
    return replace(
        hyper,
        mass_diag=1.0 / var,
        dual_avg=DualAveraging.start(hyper.step_size),
    )
