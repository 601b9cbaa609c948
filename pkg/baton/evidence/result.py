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
from dataclasses import dataclass
from typing import Any, Optional, Sequence

from baton.evidence.region import HyperRectangle
from baton.exceptions import BatonContractViolation
from baton.properties.options import EvidenceMethod

__all__: Sequence[str] = ("EvidenceResult", "BayesFactor", "bayes_factor")


@dataclass(frozen=True)
class EvidenceResult:
    """Evidence Z with its uncertainty; `log_Z` keeps precision when Z over/underflows."""

    log_Z: float
    sigma_Z: float
    method: EvidenceMethod
    n_used: int
    region: Optional[HyperRectangle] = None

    @property
    def Z(self) -> float:
        return math.exp(self.log_Z)

    @property
    def relative_uncertainty(self) -> float:
        """sigma_Z / Z, computed without forming Z when sigma_Z is finite."""
        if self.sigma_Z == 0:
            return 0.0
        return math.exp(math.log(self.sigma_Z) - self.log_Z)

    def to_mapping(self) -> dict[str, Any]:
        return {
            "Z": self.Z,
            "log_Z": self.log_Z,
            "sigma_Z": self.sigma_Z,
            "method": self.method.value,
            "n_used": self.n_used,
            "region": None if self.region is None else self.region.to_mapping(),
        }


@dataclass(frozen=True)
class BayesFactor:
    value: float
    log_value: float
    relative_uncertainty: float

    @property
    def uncertainty(self) -> float:
        return self.value * self.relative_uncertainty

    def to_mapping(self) -> dict[str, Any]:
        return {
            "value": self.value,
            "log_value": self.log_value,
            "uncertainty": self.uncertainty,
            "relative_uncertainty": self.relative_uncertainty,
        }


def bayes_factor(z_a: EvidenceResult, z_b: EvidenceResult) -> BayesFactor:
    """Z_a / Z_b with relative uncertainty sqrt((s_a/Z_a)^2 + (s_b/Z_b)^2)."""
    if not (math.isfinite(z_a.log_Z) and math.isfinite(z_b.log_Z)):
        raise BatonContractViolation("Bayes factors need two positive, finite evidences.")
    log_bf = z_a.log_Z - z_b.log_Z
    rel = math.hypot(z_a.relative_uncertainty, z_b.relative_uncertainty)
    return BayesFactor(math.exp(log_bf), log_bf, rel)
