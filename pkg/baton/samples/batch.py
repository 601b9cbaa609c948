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

from typing import TYPE_CHECKING, Iterable, Optional, Sequence

import numpy as np
import numpy.typing as npt

from baton.exceptions import BatonContractViolation

if TYPE_CHECKING:
    from baton.rng import RngNode

__all__: Sequence[str] = ("SampleBatch",)

FloatArray = npt.NDArray[np.float64]
IntArray = npt.NDArray[np.int64]


class SampleBatch:
    """
    Columnar store of sample variates with their weights, log-density values and
    chain/step provenance.

    Weights are repetition counts for Metropolis-Hastings output (a weight-w row
    stands for w consecutive identical chain states) and 1.0 for iid or HMC
    output. Rows of one chain are kept in increasing step order.
    """

    __slots__ = (
        "variates",
        "weights",
        "log_densities",
        "chain_ids",
        "step_indices",
        "names",
    )

    def __init__(
        self,
        variates: FloatArray,
        weights: FloatArray,
        log_densities: FloatArray,
        chain_ids: IntArray,
        step_indices: IntArray,
        names: Optional[Sequence[str]] = None,
    ) -> None:
        variates = np.asarray(variates, dtype=np.float64)
        if variates.ndim != 2:
            raise BatonContractViolation(f"variates must be n x d, got {variates.shape}.")
        n, d = variates.shape
        self.variates = variates
        self.weights = np.asarray(weights, dtype=np.float64).reshape(n)
        self.log_densities = np.asarray(log_densities, dtype=np.float64).reshape(n)
        self.chain_ids = np.asarray(chain_ids, dtype=np.int64).reshape(n)
        self.step_indices = np.asarray(step_indices, dtype=np.int64).reshape(n)
        self.names: tuple[str, ...] = (
            tuple(names) if names is not None else tuple(f"v_{k + 1}" for k in range(d))
        )
        if len(self.names) != d:
            raise BatonContractViolation("One name per dimension is required.")
        if n:
            if not np.all(np.isfinite(variates)):
                raise BatonContractViolation("Sample variates must be finite.")
            if not np.all(self.weights > 0):
                raise BatonContractViolation("Sample weights must be positive.")

    def __repr__(self) -> str:
        return f"SampleBatch(n={self.n}, dims={self.dims}, chains={len(self.chains())})"

    def __len__(self) -> int:
        return self.n

    @classmethod
    def empty(cls, dims: int, names: Optional[Sequence[str]] = None) -> SampleBatch:
        return cls(
            np.empty((0, dims)),
            np.empty(0),
            np.empty(0),
            np.empty(0, dtype=np.int64),
            np.empty(0, dtype=np.int64),
            names,
        )

    @classmethod
    def from_iid(
        cls,
        variates: FloatArray,
        log_densities: FloatArray,
        names: Optional[Sequence[str]] = None,
    ) -> SampleBatch:
        n = variates.shape[0]
        return cls(
            variates,
            np.ones(n),
            log_densities,
            np.zeros(n, dtype=np.int64),
            np.arange(n, dtype=np.int64),
            names,
        )

    @classmethod
    def concat(cls, batches: Iterable[SampleBatch]) -> SampleBatch:
        batches = list(batches)
        if not batches:
            raise BatonContractViolation("Cannot concatenate an empty list of batches.")
        return cls(
            np.concatenate([b.variates for b in batches]),
            np.concatenate([b.weights for b in batches]),
            np.concatenate([b.log_densities for b in batches]),
            np.concatenate([b.chain_ids for b in batches]),
            np.concatenate([b.step_indices for b in batches]),
            batches[0].names,
        )

    @property
    def n(self) -> int:
        return int(self.variates.shape[0])

    @property
    def dims(self) -> int:
        return int(self.variates.shape[1])

    @property
    def total_weight(self) -> float:
        return float(np.sum(self.weights))

    def chains(self) -> list[int]:
        return [int(c) for c in np.unique(self.chain_ids)]

    def select(self, mask: npt.NDArray[np.bool_]) -> SampleBatch:
        return SampleBatch(
            self.variates[mask],
            self.weights[mask],
            self.log_densities[mask],
            self.chain_ids[mask],
            self.step_indices[mask],
            self.names,
        )

    def chain(self, chain_id: int) -> SampleBatch:
        return self.select(self.chain_ids == chain_id)

    def has_integer_weights(self) -> bool:
        return bool(np.all(self.weights == np.round(self.weights)))

    def expanded_variates(self) -> FloatArray:
        """Rows repeated by their weight, i.e. the full sequence of chain states."""
        if not self.has_integer_weights():
            raise BatonContractViolation(
                "Repetition expansion needs integer-valued weights."
            )
        return np.repeat(self.variates, self.weights.astype(np.int64), axis=0)

    def per_chain_variates(self) -> list[FloatArray]:
        """Repetition-expanded variates, one array per chain in chain-id order."""
        return [self.chain(c).expanded_variates() for c in self.chains()]

    def mode_sample(self) -> FloatArray:
        """Variate with the largest recorded log-density."""
        if not self.n:
            raise BatonContractViolation("Empty batch has no samples.")
        best: FloatArray = self.variates[int(np.argmax(self.log_densities))].copy()
        return best

    def mean(self) -> FloatArray:
        mean: FloatArray = np.average(self.variates, axis=0, weights=self.weights)
        return mean

    def covariance(self) -> FloatArray:
        """Frequency-weighted sample covariance (divisor: total weight - 1)."""
        w = self.weights
        centered = self.variates - self.mean()
        denom = max(float(np.sum(w)) - 1.0, 1.0)
        cov: FloatArray = (centered * w[:, None]).T @ centered / denom
        return cov

    def resample(self, n: int, rng: RngNode) -> SampleBatch:
        """Unweighted batch of `n` rows drawn with probability proportional to weight."""
        if not self.n:
            raise BatonContractViolation("Cannot resample an empty batch.")
        p = self.weights / np.sum(self.weights)
        idx = np.sort(rng.generator.choice(self.n, size=n, replace=True, p=p))
        return SampleBatch(
            self.variates[idx],
            np.ones(n),
            self.log_densities[idx],
            np.zeros(n, dtype=np.int64),
            np.arange(n, dtype=np.int64),
            self.names,
        )
