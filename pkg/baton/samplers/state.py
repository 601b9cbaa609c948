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

from dataclasses import asdict, dataclass, field, fields, replace
from typing import Any, Mapping, Optional, Sequence, TypeVar

import numpy as np
import numpy.typing as npt
from scipy import linalg

from baton.api._about import (
    ALPHA_MAX,
    ALPHA_MIN,
    PSRF_THRESHOLD,
    SCALE_MAX,
    SCALE_MIN,
)
from baton.exceptions import (
    BatonConfigError,
    BatonSingularCovariance,
    validate_config_keys,
)
from baton.properties.options import GradientMode, OnFailure

__all__: Sequence[str] = (
    "ChainState",
    "TunerState",
    "BurninConfig",
    "MhConfig",
    "HmcConfig",
    "regularized_cholesky",
)

FloatArray = npt.NDArray[np.float64]
C = TypeVar("C", bound="_Config")


@dataclass(frozen=True)
class ChainState:
    """
    Position of one chain. `log_target` is always the target's log-density at
    `position`; `weight_pending` counts how many consecutive steps the chain has
    spent there.
    """

    position: FloatArray
    log_target: float
    weight_pending: int
    step_index: int
    chain_id: int
    last_accepted: bool = False
    accept_prob: float = 0.0

    def moved(
        self, position: FloatArray, log_target: float, accept_prob: float
    ) -> ChainState:
        return replace(
            self,
            position=position,
            log_target=log_target,
            weight_pending=1,
            step_index=self.step_index + 1,
            last_accepted=True,
            accept_prob=accept_prob,
        )

    def stayed(self, accept_prob: float) -> ChainState:
        return replace(
            self,
            weight_pending=self.weight_pending + 1,
            step_index=self.step_index + 1,
            last_accepted=False,
            accept_prob=accept_prob,
        )


def regularized_cholesky(cov: FloatArray, /) -> FloatArray:
    """
    Lower Cholesky factor of `cov`. If the factorization fails, the diagonal is
    loaded with 1e-6 * tr(cov) / d once and the factorization retried.

    :raises: BatonSingularCovariance if the regularized matrix is still not PD.
    """
    cov = 0.5 * (cov + cov.T)
    try:
        chol: FloatArray = linalg.cholesky(cov, lower=True)
        return chol
    except linalg.LinAlgError:
        pass
    d = cov.shape[0]
    jitter = 1e-6 * float(np.trace(cov)) / d
    if not np.isfinite(jitter) or jitter <= 0:
        raise BatonSingularCovariance(f"Covariance has non-positive trace: {np.trace(cov)}.")
    try:
        chol = linalg.cholesky(cov + jitter * np.eye(d), lower=True)
    except linalg.LinAlgError as e:
        raise BatonSingularCovariance(
            "Proposal covariance is not positive definite after regularization."
        ) from e
    return chol


@dataclass
class TunerState:
    """
    Adaptive proposal of one Metropolis-Hastings chain: covariance `cov`, scale
    factor `scale` and the acceptance bookkeeping of the current cycle.
    """

    cov: FloatArray
    scale: float
    nu: float = 1.0
    n_accepted: int = 0
    n_proposed: int = 0
    tuned: bool = False
    chol: FloatArray = field(init=False, repr=False)

    def __post_init__(self) -> None:
        self.cov = np.atleast_2d(np.asarray(self.cov, dtype=np.float64))
        self.chol = regularized_cholesky(self.cov)

    @classmethod
    def initial(cls, dims: int, variances: Optional[FloatArray], nu: float) -> TunerState:
        diag = np.ones(dims) if variances is None else np.asarray(variances, dtype=float)
        if diag.shape != (dims,) or not np.all(np.isfinite(diag)) or np.any(diag <= 0):
            diag = np.ones(dims)
        return cls(np.diag(diag), 2.38 / np.sqrt(dims), nu)

    @property
    def acceptance_rate(self) -> float:
        return self.n_accepted / self.n_proposed if self.n_proposed else 0.0

    def record(self, accepted: bool) -> None:
        self.n_proposed += 1
        self.n_accepted += int(accepted)

    def snapshot(self) -> dict[str, Any]:
        return {
            "cov": self.cov,
            "scale": self.scale,
            "nu": self.nu,
            "acceptance_rate": self.acceptance_rate,
            "tuned": self.tuned,
        }


class _Config:
    """Shared `from_mapping` / `to_mapping` for configuration dataclasses."""

    @classmethod
    def from_mapping(cls: type[C], mapping: Optional[Mapping[str, Any]] = None) -> C:
        mapping = dict(mapping or {})
        names = [f.name for f in fields(cls)]  # type: ignore[arg-type]
        validate_config_keys(mapping, names, name=cls.__name__)
        try:
            return cls(**mapping)
        except (TypeError, ValueError) as e:
            raise BatonConfigError(f"{cls.__name__}: {e}") from e

    def to_mapping(self) -> dict[str, Any]:
        out = asdict(self)  # type: ignore[call-overload]
        return {k: (v.value if hasattr(v, "value") else v) for k, v in out.items()}


@dataclass(frozen=True)
class BurninConfig(_Config):
    n_chains: int = 4
    n_final_samples: int = 10_000
    cycle_fraction: float = 0.10
    max_cycles: int = 30
    psrf_threshold: float = PSRF_THRESHOLD
    on_failure: OnFailure = OnFailure.warn

    def __post_init__(self) -> None:
        if not 0 < self.cycle_fraction <= 1:
            raise BatonConfigError(
                f"cycle_fraction must lie in (0, 1], got {self.cycle_fraction}."
            )
        if self.n_chains < 2:
            raise BatonConfigError("Convergence tests need n_chains >= 2.")
        if self.n_final_samples < 1:
            raise BatonConfigError("n_final_samples must be >= 1.")
        if self.max_cycles < 0:
            raise BatonConfigError("max_cycles must be >= 0.")
        object.__setattr__(self, "on_failure", OnFailure(self.on_failure))

    @property
    def cycle_steps(self) -> int:
        return int(np.ceil(self.cycle_fraction * self.n_final_samples))


@dataclass(frozen=True)
class MhConfig(_Config):
    nu: float = 1.0
    beta: float = 1.5
    alpha_min: float = ALPHA_MIN
    alpha_max: float = ALPHA_MAX
    scale_min: float = SCALE_MIN
    scale_max: float = SCALE_MAX

    def __post_init__(self) -> None:
        if self.nu <= 0:
            raise BatonConfigError(f"nu must be positive, got {self.nu}.")
        if self.beta <= 1:
            raise BatonConfigError(f"beta must be > 1, got {self.beta}.")
        if not 0 <= self.alpha_min < self.alpha_max <= 1:
            raise BatonConfigError("Need 0 <= alpha_min < alpha_max <= 1.")
        if not 0 < self.scale_min < self.scale_max:
            raise BatonConfigError("Need 0 < scale_min < scale_max.")


@dataclass(frozen=True)
class HmcConfig(_Config):
    n_leapfrog: int = 10
    target_accept: float = 0.8
    step_size: float = 0.1
    gradient: GradientMode = GradientMode.user
    fd_step: float = 1e-6
    jitter: float = 0.2

    def __post_init__(self) -> None:
        if self.n_leapfrog < 1:
            raise BatonConfigError("n_leapfrog must be >= 1.")
        if not 0 < self.target_accept < 1:
            raise BatonConfigError("target_accept must lie in (0, 1).")
        if self.step_size <= 0 or self.fd_step <= 0:
            raise BatonConfigError("step_size and fd_step must be positive.")
        if not 0 <= self.jitter < 1:
            raise BatonConfigError(f"jitter must lie in [0, 1), got {self.jitter}.")
        object.__setattr__(self, "gradient", GradientMode(self.gradient))
