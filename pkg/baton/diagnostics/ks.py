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
from typing import Optional, Sequence

import numpy as np
import numpy.typing as npt
from scipy import special

from baton.exceptions import BatonContractViolation

__all__: Sequence[str] = ("ks_statistic", "ks_pvalue", "ks_two_sample")

FloatArray = npt.NDArray[np.float64]


def _ecdf(
    x: FloatArray, w: Optional[FloatArray], at: FloatArray
) -> FloatArray:
    order = np.argsort(x, kind="stable")
    xs = x[order]
    cw = np.cumsum(np.ones(x.shape[0]) if w is None else w[order])
    cw = np.concatenate([[0.0], cw / cw[-1]])
    cdf: FloatArray = cw[np.searchsorted(xs, at, side="right")]
    return cdf


def ks_statistic(
    a: FloatArray,
    b: FloatArray,
    weights_a: Optional[FloatArray] = None,
    weights_b: Optional[FloatArray] = None,
) -> float:
    """D = sup |F_a - F_b| of the (weighted) empirical distribution functions."""
    a = np.asarray(a, dtype=np.float64)
    b = np.asarray(b, dtype=np.float64)
    if a.size == 0 or b.size == 0:
        raise BatonContractViolation("The KS test needs two nonempty samples.")
    at = np.concatenate([a, b])
    return float(np.max(np.abs(_ecdf(a, weights_a, at) - _ecdf(b, weights_b, at))))


def ks_pvalue(d: float, n_eff_a: float, n_eff_b: float) -> float:
    """Asymptotic Kolmogorov p-value with n_e = n_a n_b / (n_a + n_b)."""
    en = math.sqrt(n_eff_a * n_eff_b / (n_eff_a + n_eff_b))
    return float(special.kolmogorov((en + 0.12 + 0.11 / en) * d))


def ks_two_sample(
    a: FloatArray,
    b: FloatArray,
    n_eff_a: Optional[float] = None,
    n_eff_b: Optional[float] = None,
    *,
    weights_a: Optional[FloatArray] = None,
    weights_b: Optional[FloatArray] = None,
) -> float:
    """
    Two-sample KS p-value.

    ---
    :param n_eff_a: (optional) Effective size of `a`; use the ESS for MCMC output.
                    Defaults to the total weight.
    :param n_eff_b: (optional) Same for `b`.
    """
    a = np.asarray(a, dtype=np.float64)
    b = np.asarray(b, dtype=np.float64)
    d = ks_statistic(a, b, weights_a, weights_b)
    na = n_eff_a if n_eff_a is not None else float(
        a.size if weights_a is None else np.sum(weights_a)
    )
    nb = n_eff_b if n_eff_b is not None else float(
        b.size if weights_b is None else np.sum(weights_b)
    )
    return ks_pvalue(d, na, nb)
