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

from typing import Any, Sequence

from baton.diagnostics import DEFAULT_QUANTILES
from baton.evidence import HARMONIC_MAX_DIMS
from baton.exceptions import BatonConfigError
from baton.output import DEFAULT_LEVELS
from baton.physics import SbConfig
from baton.properties.options import (
    AutocorrMethod,
    BinningRule,
    EvidenceMethod,
    SamplerKind,
)
from baton.samplers import BurninConfig, HmcConfig, MhConfig
from baton.testsuite import SuiteConfig

__all__: Sequence[str] = ("TASKS", "default_config")

TASKS: tuple[str, ...] = ("sample", "diagnose", "integrate", "testsuite", "example")

MC_DEFAULT_POINTS = 1_000_000


def default_config(task: str) -> dict[str, Any]:
    """
    The algorithm choice and settings `task` uses when nothing is configured.

    :param task: (required) One of `sample`, `diagnose`, `integrate`, `testsuite`,
        `example`.
    :raises: BatonConfigError on an unknown task.
    """
    match task:
        case "sample":
            return {
                "sampler": SamplerKind.mh.value,
                "burnin": BurninConfig().to_mapping(),
                SamplerKind.mh.value: MhConfig().to_mapping(),
                SamplerKind.hmc.value: HmcConfig().to_mapping(),
            }
        case "diagnose":
            return {
                "autocorr": AutocorrMethod.geyer.value,
                "binning": BinningRule.freedman_diaconis.value,
                "quantiles": list(DEFAULT_QUANTILES),
                "levels": list(DEFAULT_LEVELS),
                "mode_refinement": "nelder_mead",
            }
        case "integrate":
            return {
                "method": EvidenceMethod.harmonic_rect.value,
                "harmonic": {"max_dims": HARMONIC_MAX_DIMS, "jackknife_blocks": 10},
                "mc": {"n": MC_DEFAULT_POINTS, "stratified": False},
            }
        case "testsuite":
            return SuiteConfig().to_mapping()
        case "example":
            return {
                "sb": SbConfig().to_mapping(),
                "sampler": SamplerKind.mh.value,
                "evidence": EvidenceMethod.harmonic_rect.value,
            }
        case _:
            raise BatonConfigError(f"Unknown task {task!r}; choose one of {list(TASKS)}.")
