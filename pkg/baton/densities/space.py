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

from typing import Any, Optional, Sequence

import numpy as np
import numpy.typing as npt

from baton.exceptions import BatonContractViolation

__all__: Sequence[str] = ("ParameterSpace",)


class ParameterSpace:
    __slots__: Sequence[str] = ("lower", "upper", "names")

    def __init__(
        self,
        lower: Sequence[float] | npt.NDArray[np.float64],
        upper: Sequence[float] | npt.NDArray[np.float64],
        names: Optional[Sequence[str]] = None,
    ) -> None:
        """
        The set of free parameters a density is defined on: one interval per dimension.
        Bounds may be infinite. Points outside the bounds have zero density.

        ---
        :param lower: (required) Lower bound per dimension, may be `-inf`.
        :param upper: (required) Upper bound per dimension, may be `+inf`.
        :param names: (optional) Label per dimension. Defaults to `v_1 .. v_d`.
        """
        self.lower = np.asarray(lower, dtype=np.float64).copy()
        self.upper = np.asarray(upper, dtype=np.float64).copy()
        if self.lower.ndim != 1 or self.lower.shape != self.upper.shape:
            raise BatonContractViolation("lower and upper must be 1D and of equal length.")
        if self.lower.shape[0] < 1:
            raise BatonContractViolation("A parameter space needs at least one dimension.")
        if not np.all(self.lower < self.upper):
            raise BatonContractViolation(
                f"Every lower bound must be below its upper bound: {self.lower} / {self.upper}."
            )
        if names is None:
            names = [f"v_{k + 1}" for k in range(self.lower.shape[0])]
        if len(names) != self.lower.shape[0]:
            raise BatonContractViolation("One name per dimension is required.")
        self.names: tuple[str, ...] = tuple(names)
        self.lower.setflags(write=False)
        self.upper.setflags(write=False)

    @classmethod
    def unbounded(cls, dims: int, names: Optional[Sequence[str]] = None) -> ParameterSpace:
        return cls(np.full(dims, -np.inf), np.full(dims, np.inf), names)

    @classmethod
    def box(
        cls,
        lower: Sequence[float],
        upper: Sequence[float],
        names: Optional[Sequence[str]] = None,
    ) -> ParameterSpace:
        return cls(lower, upper, names)

    def __repr__(self) -> str:
        return f"ParameterSpace(dims={self.dims}, names={list(self.names)})"

    def __eq__(self, other: Any) -> bool:
        if not isinstance(other, ParameterSpace):
            return NotImplemented
        return (
            self.dims == other.dims
            and bool(np.array_equal(self.lower, other.lower))
            and bool(np.array_equal(self.upper, other.upper))
        )

    def __hash__(self) -> int:
        return hash((self.lower.tobytes(), self.upper.tobytes()))

    @property
    def dims(self) -> int:
        return int(self.lower.shape[0])

    @property
    def is_bounded(self) -> bool:
        return bool(np.any(np.isfinite(self.lower)) or np.any(np.isfinite(self.upper)))

    def contains(self, point: npt.NDArray[np.float64]) -> bool:
        return bool(np.all(point >= self.lower) and np.all(point <= self.upper))

    def contains_rows(self, points: npt.NDArray[np.float64]) -> npt.NDArray[np.bool_]:
        inside: npt.NDArray[np.bool_] = np.all(
            (points >= self.lower) & (points <= self.upper), axis=1
        )
        return inside

    def concat(self, other: ParameterSpace) -> ParameterSpace:
        return ParameterSpace(
            np.concatenate([self.lower, other.lower]),
            np.concatenate([self.upper, other.upper]),
            (*self.names, *other.names),
        )
