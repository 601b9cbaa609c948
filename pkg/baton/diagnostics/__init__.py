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

from baton.diagnostics.autocorr import (
    autocovariance,
    autocovariance_all,
    ess,
    integrated_autocorr_time,
)
from baton.diagnostics.convergence import (
    ConvergenceReport,
    convergence_report,
    mpsrf,
    psrf,
)
from baton.diagnostics.estimates import (
    DEFAULT_QUANTILES,
    bin_count,
    marginal_mode,
    point_estimates,
    weighted_histogram,
    weighted_quantile,
)
from baton.diagnostics.ks import ks_pvalue, ks_statistic, ks_two_sample
from baton.diagnostics.mode import global_mode, refine_mode
from baton.diagnostics.pulls import expected_counts, pull_histogram, pull_statistics

__all__: Sequence[str] = (
    "ConvergenceReport",
    "psrf",
    "mpsrf",
    "convergence_report",
    "autocovariance",
    "autocovariance_all",
    "integrated_autocorr_time",
    "ess",
    "ks_statistic",
    "ks_pvalue",
    "ks_two_sample",
    "DEFAULT_QUANTILES",
    "bin_count",
    "weighted_quantile",
    "weighted_histogram",
    "point_estimates",
    "marginal_mode",
    "refine_mode",
    "global_mode",
    "pull_histogram",
    "expected_counts",
    "pull_statistics",
)
