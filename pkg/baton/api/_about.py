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
from typing import Final, Sequence

__all__: Sequence[str] = (
    "__version__",
    "__package_name__",
    "ALPHA_MIN",
    "ALPHA_MAX",
    "SCALE_MIN",
    "SCALE_MAX",
    "PSRF_THRESHOLD",
    "PARTITION_FANOUT",
    "PARTITION_LANES",
)

__version__: Final[str] = "0.1.0"
__package_name__: Final[str] = "baton"

# Acceptance band and scale-factor clamp of the Metropolis-Hastings tuner.
ALPHA_MIN: Final[float] = 0.15
ALPHA_MAX: Final[float] = 0.35
SCALE_MIN: Final[float] = 1e-4
SCALE_MAX: Final[float] = 100.0

# Cut-off for R-hat and multivariate R-hat during burn-in.
PSRF_THRESHOLD: Final[float] = 1.1

# Philox 4x64 counter layout: lane 0 is the draw cursor, lanes 1-3 hold the
# partition path. Deeper paths are folded into the key.
PARTITION_FANOUT: Final[int] = 2**32
PARTITION_LANES: Final[int] = 3


# Reference notes
#  - Gelman & Rubin (1992), Brooks & Gelman (1998): R-hat / multivariate R-hat
#  - Geyer (1992): initial monotone sequence estimator
#  - Madras & Sokal (1988): automatic windowing
#  - Salmon et al. (2011): Philox counter-based generators
#  - Hoffman & Gelman (2014): dual averaging step-size adaptation
