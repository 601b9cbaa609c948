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

import numpy as np
import pytest

from baton.diagnostics import convergence_report, mpsrf, psrf
from baton.exceptions import (
    BatonContractViolation,
    BatonDegenerateVariance,
    BatonSingularCovariance,
)


def test_identical_chains(rng) -> None:
    chain = rng.generator.standard_normal((500, 2))
    chains = [chain, chain.copy(), chain.copy()]
    n = 500
    assert psrf(chains, 0) == pytest.approx((n - 1) / n)
    assert psrf(chains, 1) == pytest.approx((n - 1) / n)
    assert mpsrf(chains) == pytest.approx((n - 1) / n)
    assert convergence_report(chains).converged


def test_mixed_chains_pass(rng) -> None:
    chains = [rng.partition(k).generator.standard_normal((2_000, 3)) for k in range(4)]
    report = convergence_report(chains, 1.1)
    assert report.converged
    assert np.all(report.psrf_per_dim < 1.05)
    assert report.mpsrf >= np.max(report.psrf_per_dim) - 0.05


def test_separated_chains_fail(rng) -> None:
    chains = [
        rng.partition(k).generator.standard_normal((1_000, 2)) + 5.0 * k for k in range(3)
    ]
    report = convergence_report(chains, 1.1)
    assert not report.converged
    assert np.all(report.psrf_per_dim > 2.0)
    assert report.to_mapping()["converged"] is False


def test_chains_truncated_to_common_length(rng) -> None:
    long = rng.partition(0).generator.standard_normal(800)
    short = rng.partition(1).generator.standard_normal(300)
    assert psrf([long, short]) == pytest.approx(psrf([long[:300], short]))


def test_constant_chains_are_degenerate() -> None:
    chains = [np.ones((50, 1)), np.ones((50, 1))]
    with pytest.raises(BatonDegenerateVariance):
        psrf(chains)


def test_collinear_dimensions_are_singular(rng) -> None:
    chains = []
    for k in range(2):
        x = rng.partition(k).generator.standard_normal(100)
        chains.append(np.column_stack([x, 2.0 * x]))
    with pytest.raises(BatonSingularCovariance):
        mpsrf(chains)


def test_singular_covariance_names_dependent_dimensions(rng) -> None:
    chains = []
    for k in range(3):
        x, z = rng.partition(k).generator.standard_normal((2, 200))
        chains.append(np.column_stack([z, x, 3.0 * x - 1.0]))
    with pytest.raises(BatonSingularCovariance, match=r"dims \[2, 3\]"):
        mpsrf(chains)


def test_needs_two_chains(rng) -> None:
    with pytest.raises(BatonContractViolation):
        psrf([rng.generator.standard_normal(100)])


def test_mpsrf_of_one_dimension_follows_psrf(rng) -> None:
    chains = [
        rng.partition(k).generator.standard_normal((400, 1)) + 0.2 * k for k in range(4)
    ]
    m, n = 4, 400
    base = (n - 1) / n
    assert mpsrf(chains) - base == pytest.approx((m + 1) / m * (psrf(chains) - base))


@pytest.mark.parametrize("offset", [0.5, 1.0, 2.0])
def test_psrf_of_offset_chains_approaches_its_limit(rng, offset: float) -> None:
    gen = rng.generator
    chains = [gen.standard_normal(200_000), gen.standard_normal(200_000) + offset]
    assert psrf(chains) == pytest.approx(1.0 + offset**2 / 2, rel=0.02)
