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
import math
from typing import Any, Iterable, Mapping, Sequence

import numpy as np
import numpy.typing as npt

from baton.exceptions import errors

__all__: Sequence[str] = (
    "validate_point",
    "validate_log_density",
    "validate_config_keys",
)


def validate_point(point: Any, dims: int) -> npt.NDArray[np.float64]:
    """:returns: `point` as a 1D float array of length `dims`.
    :raises: BatonContractViolation on a shape mismatch."""
    arr = np.asarray(point, dtype=np.float64)
    if arr.ndim != 1 or arr.shape[0] != dims:
        raise errors.BatonContractViolation(
            f"Expected a point of {dims} dimension(s), got shape {arr.shape}."
        )
    return arr


def validate_log_density(value: Any) -> float:
    """Finite values and -inf pass through. NaN and +inf raise."""
    value = float(value)
    match value:
        case v if math.isnan(v):
            raise errors.BatonNonFiniteDensity("log-density evaluated to NaN.")
        case v if v == math.inf:
            raise errors.BatonNonFiniteDensity("log-density evaluated to +inf.")
        case _:
            return value


def validate_config_keys(
    mapping: Mapping[str, Any], allowed: Iterable[str], /, *, name: str
) -> None:
    unknown = sorted(set(mapping) - set(allowed))
    if unknown:
        raise errors.BatonConfigError(
            f"{name}: unknown configuration key(s) {unknown}. "
            f"Allowed keys: {sorted(allowed)}."
        )
