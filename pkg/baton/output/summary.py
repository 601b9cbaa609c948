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

from dataclasses import dataclass
from typing import Any, Optional, Sequence

import numpy as np
import numpy.typing as npt

from baton.api._about import PSRF_THRESHOLD
from baton.api.client import _BLOG
from baton.densities import DensityModel
from baton.diagnostics import (
    DEFAULT_QUANTILES,
    convergence_report,
    ess,
    global_mode,
    point_estimates,
)
from baton.exceptions import BatonDegenerateVariance, BatonSingularCovariance
from baton.properties.options import AutocorrMethod
from baton.samples import SampleBatch

__all__: Sequence[str] = ("Diagnostics", "diagnose", "summarize")

FloatArray = npt.NDArray[np.float64]

_NAME_WIDTH = 12
_COLUMNS = ("mean", "median", "std", "q16", "q50", "q84", "ess", "R-hat")


@dataclass(frozen=True)
class Diagnostics:
    ess: FloatArray
    psrf: Optional[FloatArray] = None
    mpsrf: Optional[float] = None
    threshold: float = PSRF_THRESHOLD
    mode: Optional[FloatArray] = None
    cycles_used: Optional[int] = None

    @property
    def converged(self) -> Optional[bool]:
        if self.psrf is None or self.mpsrf is None:
            return None
        return bool(np.max(self.psrf) <= self.threshold and self.mpsrf <= self.threshold)

    def to_mapping(self) -> dict[str, Any]:
        return {
            "ess": self.ess,
            "psrf": self.psrf,
            "mpsrf": self.mpsrf,
            "threshold": self.threshold,
            "converged": self.converged,
            "mode": self.mode,
            "cycles_used": self.cycles_used,
        }


def diagnose(
    batch: SampleBatch,
    target: Optional[DensityModel] = None,
    *,
    threshold: float = PSRF_THRESHOLD,
    method: AutocorrMethod | str = AutocorrMethod.geyer,
    cycles_used: Optional[int] = None,
) -> Diagnostics:
    """
    ESS per dimension, R-hat and multivariate R-hat across chains, and the global mode.

    The mode is refined against `target` when given, otherwise it is the sample with
    the largest log-density. R-hat needs at least two chains; degenerate chains report
    infinite R-hat.
    """
    psrf_values: Optional[FloatArray] = None
    mpsrf_value: Optional[float] = None
    chains = batch.per_chain_variates()
    if len(chains) >= 2:
        try:
            report = convergence_report(chains, threshold)
            psrf_values, mpsrf_value = report.psrf_per_dim, report.mpsrf
        except (BatonDegenerateVariance, BatonSingularCovariance) as e:
            _BLOG.warning("convergence test failed: %s", e)
            psrf_values, mpsrf_value = np.full(batch.dims, np.inf), float("inf")
    mode = batch.mode_sample() if target is None else global_mode(target, batch)
    return Diagnostics(
        ess(batch, method), psrf_values, mpsrf_value, threshold, mode, cycles_used
    )


def _num(value: Optional[float]) -> str:
    if value is None:
        return f"{'-':>11}"
    return f"{value:11.5g}"


def summarize(batch: SampleBatch, diagnostics: Diagnostics) -> str:
    """Plain-text table of point estimates, ESS and R-hat per parameter."""
    lines = ["baton sampling summary"]
    cycles = "-" if diagnostics.cycles_used is None else str(diagnostics.cycles_used)
    lines.append(
        f"chains: {len(batch.chains())}  samples: {batch.n}  "
        f"total weight: {batch.total_weight:g}  burn-in cycles: {cycles}"
    )
    lines.append(f"{'parameter':<{_NAME_WIDTH}}" + "".join(f"{c:>11}" for c in _COLUMNS))
    for k, name in enumerate(batch.names):
        est = point_estimates(batch, k, DEFAULT_QUANTILES)
        q = [est["quantiles"][f"{p:g}"] for p in DEFAULT_QUANTILES]
        r_hat = None if diagnostics.psrf is None else float(diagnostics.psrf[k])
        values = [est["mean"], est["median"], est["std"], *q, float(diagnostics.ess[k]), r_hat]
        lines.append(f"{name:<{_NAME_WIDTH}}" + "".join(_num(v) for v in values))

    if diagnostics.mode is not None:
        mode = ", ".join(f"{v:.6g}" for v in diagnostics.mode)
        lines.append(f"global mode: [{mode}]")

    match diagnostics.converged:
        case None:
            lines.append("convergence: not tested (fewer than 2 chains)")
        case True:
            assert diagnostics.psrf is not None
            lines.append(
                f"convergence: converged (max R-hat {float(np.max(diagnostics.psrf)):.4g}, "
                f"R-hat_p {diagnostics.mpsrf:.4g} <= {diagnostics.threshold:g})"
            )
        case False:
            assert diagnostics.psrf is not None
            lines.append(
                f"WARNING: chains have not converged (max R-hat "
                f"{float(np.max(diagnostics.psrf)):.4g}, R-hat_p {diagnostics.mpsrf:.4g}, "
                f"threshold {diagnostics.threshold:g})"
            )
    return "\n".join(lines) + "\n"
