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

from baton.evidence.cubature import MCIntegrator, mc_cubature
from baton.evidence.harmonic import (
    HARMONIC_MAX_DIMS,
    harmonic_mean_integral,
    integrate_harmonic,
)
from baton.evidence.region import HyperRectangle, choose_region
from baton.evidence.result import BayesFactor, EvidenceResult, bayes_factor

__all__: Sequence[str] = (
    "HyperRectangle",
    "EvidenceResult",
    "BayesFactor",
    "choose_region",
    "harmonic_mean_integral",
    "integrate_harmonic",
    "HARMONIC_MAX_DIMS",
    "MCIntegrator",
    "mc_cubature",
    "bayes_factor",
)
