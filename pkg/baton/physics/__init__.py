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

from baton.physics.runner import MARGINAL_PARAMETERS, SbExample, run_example
from baton.physics.signalbkg import (
    REFERENCE_DETECTORS,
    DetectorSpec,
    EventDataset,
    SbConfig,
    SbLikelihood,
    SbModelBundle,
    SbParams,
    background_pdf,
    expected_bin_counts,
    generate_sb_data,
    parameter_names,
    sb_log_likelihood,
    sb_posterior,
    sb_prior,
    signal_pdf,
)

__all__: Sequence[str] = (
    "DetectorSpec",
    "SbParams",
    "EventDataset",
    "SbConfig",
    "SbLikelihood",
    "SbModelBundle",
    "REFERENCE_DETECTORS",
    "background_pdf",
    "signal_pdf",
    "expected_bin_counts",
    "generate_sb_data",
    "sb_log_likelihood",
    "sb_prior",
    "sb_posterior",
    "parameter_names",
    "SbExample",
    "run_example",
    "MARGINAL_PARAMETERS",
)
