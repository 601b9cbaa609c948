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
from enum import Enum
from typing import Literal, Sequence, TypeAlias

__all__: Sequence[str] = (
    "DensityRole",
    "SamplerKind",
    "GradientMode",
    "OnFailure",
    "AutocorrMethod",
    "BinningRule",
    "EvidenceMethod",
    "SbModel",
    "TestDensityName",
    "Subcommand",
)


class DensityRole(str, Enum):
    prior = "prior"
    likelihood = "likelihood"
    posterior = "posterior"
    generic = "generic"


class SamplerKind(str, Enum):
    mh = "mh"
    hmc = "hmc"


class GradientMode(str, Enum):
    user = "user"
    fd = "fd"


class OnFailure(str, Enum):
    warn = "warn"
    error = "error"


class AutocorrMethod(str, Enum):
    geyer = "geyer"
    sokal = "sokal"


class BinningRule(str, Enum):
    sqrt = "sqrt"
    sturges = "sturges"
    rice = "rice"
    scott = "scott"
    freedman_diaconis = "freedman_diaconis"


class EvidenceMethod(str, Enum):
    harmonic_rect = "harmonic_rect"
    mc_plain = "mc_plain"
    mc_stratified = "mc_stratified"


class SbModel(str, Enum):
    sb = "SB"
    bkg = "BKG"


TestDensityName: TypeAlias = Literal[
    "normal",
    "multi_cauchy",
    "funnel",
]

Subcommand: TypeAlias = Literal[
    "sample",
    "diagnose",
    "integrate",
    "testsuite",
    "example",
    "defaults",
]
