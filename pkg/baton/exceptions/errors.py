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
from typing import Any, Optional, Sequence

__all__: Sequence[str] = (
    "BatonBurninFailed",
    "BatonConfigError",
    "BatonContractViolation",
    "BatonDegenerateVariance",
    "BatonDimensionLimit",
    "BatonNonFiniteDensity",
    "BatonRegionError",
    "BatonRngExhausted",
    "BatonSampleFileError",
    "BatonSingularCovariance",
    "BatonSpaceMismatch",
    "BatonTrajectoryDivergence",
    "BatonUnsupportedOperation",
)


class _BatonErrors(Exception):
    """Base for an error raised by this package. Any exceptions should derive from this."""

    def __init__(self, *args: object) -> None:
        super().__init__(*args)


class BatonContractViolation(_BatonErrors):
    def __init__(self, *args: object) -> None:
        super().__init__(*args)
        self.__notes__: list[str] = [
            "A precondition of the call was not met (wrong dimension, size or range)."
        ]


class BatonSpaceMismatch(_BatonErrors):
    def __init__(self, *args: object) -> None:
        super().__init__(*args)
        self.__notes__: list[str] = [
            "Densities that are combined must be defined on identical parameter spaces."
        ]


class BatonUnsupportedOperation(_BatonErrors):
    def __init__(self, *args: object) -> None:
        super().__init__(*args)
        self.__notes__: list[str] = [
            "The density does not support this operation. ",
            "iid sampling needs an iid-capable density, HMC needs a differentiable one; "
            "use the Metropolis-Hastings sampler otherwise.",
        ]


class BatonNonFiniteDensity(_BatonErrors):
    def __init__(self, *args: object) -> None:
        super().__init__(*args)
        self.__notes__: list[str] = [
            "A log-density must be a finite real or -inf. NaN and +inf are rejected."
        ]


class BatonTrajectoryDivergence(_BatonErrors):
    def __init__(self, *args: object) -> None:
        super().__init__(*args)
        self.__notes__: list[str] = [
            "The leapfrog trajectory reached a non-finite state. "
            "The sampler treats this as a rejected proposal."
        ]


class BatonDegenerateVariance(_BatonErrors):
    def __init__(self, *args: object) -> None:
        super().__init__(*args)
        self.__notes__: list[str] = [
            "The within-chain variance is zero; every chain is constant in this dimension."
        ]


class BatonSingularCovariance(_BatonErrors):
    def __init__(self, *args: object) -> None:
        super().__init__(*args)
        self.__notes__: list[str] = [
            "A covariance matrix is singular or not positive definite after regularization."
        ]


class BatonBurninFailed(_BatonErrors):
    def __init__(self, *args: object, diagnostics: Optional[Any] = None) -> None:
        super().__init__(*args)
        self.diagnostics = diagnostics
        self.__notes__: list[str] = [
            "Tuning and convergence were not reached within the maximum number of cycles. ",
            "Set on_failure='warn' to continue with the unconverged chains.",
        ]


class BatonRegionError(_BatonErrors):
    def __init__(self, *args: object) -> None:
        super().__init__(*args)
        self.__notes__: list[str] = [
            "No valid integration region could be placed for the harmonic-mean estimator."
        ]


class BatonDimensionLimit(_BatonErrors):
    def __init__(self, *args: object) -> None:
        super().__init__(*args)
        self.__notes__: list[str] = [
            "The estimator is not reliable in this many dimensions and refuses to run."
        ]


class BatonRngExhausted(_BatonErrors):
    def __init__(self, *args: object) -> None:
        super().__init__(*args)
        self.__notes__: list[str] = [
            "The draw cursor of a random stream would cross into a sibling partition."
        ]


class BatonSampleFileError(_BatonErrors):
    def __init__(self, *args: object) -> None:
        super().__init__(*args)
        self.__notes__: list[str] = [
            "Sample files need the header chain_id,step,weight,log_density,v_1..v_d."
        ]


class BatonConfigError(_BatonErrors):
    def __init__(self, *args: object) -> None:
        super().__init__(*args)
        self.__notes__: list[str] = ["The configuration is invalid."]
