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

from dataclasses import dataclass, field
from typing import Any, Optional, Sequence, get_args

import numpy as np
import numpy.typing as npt

from baton.api.client import _BatonRuntime
from baton.densities import TestDensity, make_test_density
from baton.diagnostics import ess, global_mode, ks_two_sample, pull_statistics
from baton.evidence import integrate_harmonic
from baton.exceptions import BatonConfigError
from baton.exceptions.errors import _BatonErrors
from baton.properties.build import BatonObject, build_report
from baton.properties.options import SamplerKind, TestDensityName
from baton.rng import RngNode, root_rng
from baton.samplers import BurninConfig, MCMCSampler
from baton.samplers.state import _Config
from baton.samples import SampleBatch

__all__: Sequence[str] = (
    "SuiteConfig",
    "CaseRecord",
    "TestReport",
    "TestSuite",
    "run_testsuite",
    "EVIDENCE_MAX_DIMS",
)

FloatArray = npt.NDArray[np.float64]

# Fixed target order: the first partition level of the suite stream.
_TARGETS: tuple[TestDensityName, ...] = get_args(TestDensityName)

EVIDENCE_MAX_DIMS: dict[str, int] = {"normal": 20, "multi_cauchy": 12, "funnel": 12}

# Absolute tolerance for the mean where the relative rule does not apply.
_MEAN_ABS_TOL: dict[str, float] = {"multi_cauchy": 1.5}

# Children of one attempt stream.
_CHAINS, _REFERENCE = 0, 1


@dataclass(frozen=True)
class SuiteConfig(_Config):
    targets: tuple[str, ...] = _TARGETS
    dims_list: tuple[int, ...] = (2,)
    sampler: SamplerKind = SamplerKind.mh
    n_chains: int = 4
    n_samples: int = 100_000
    n_iid: int = 100_000
    seed: int = 0
    evidence: bool = True
    mode_tol: float = 0.05
    mean_tol: float = 0.05
    var_tol: float = 0.10
    ks_threshold: float = 0.005
    max_retries: int = 1

    def __post_init__(self) -> None:
        object.__setattr__(self, "targets", tuple(self.targets))
        object.__setattr__(self, "dims_list", tuple(int(d) for d in self.dims_list))
        object.__setattr__(self, "sampler", SamplerKind(self.sampler))
        unknown = [t for t in self.targets if t not in _TARGETS]
        if unknown:
            raise BatonConfigError(
                f"Unknown targets {unknown}; choose from {list(_TARGETS)}."
            )
        if not self.dims_list or min(self.dims_list) < 1:
            raise BatonConfigError("dims_list needs positive dimensions.")
        if self.n_samples < 10 or self.n_iid < 10:
            raise BatonConfigError("n_samples and n_iid must be >= 10.")
        if self.max_retries < 0:
            raise BatonConfigError("max_retries must be >= 0.")

    def cases(self) -> list[tuple[str, int]]:
        """(target, dims) pairs in run order; funnels below 2 dims are left out."""
        return [
            (t, d)
            for t in self.targets
            for d in self.dims_list
            if not (t == "funnel" and d < 2)
        ]


@dataclass
class CaseRecord:
    target_name: str
    dims: int
    seed: int
    config: dict[str, Any]
    attempts: int = 0
    mode_true: Optional[FloatArray] = None
    mode_est: Optional[FloatArray] = None
    mean_true: Optional[FloatArray] = None
    mean_est: Optional[FloatArray] = None
    var_true: Optional[FloatArray] = None
    var_est: Optional[FloatArray] = None
    Z_est: Optional[float] = None
    sigma_Z: Optional[float] = None
    evidence_skip: Optional[str] = None
    ks_pvalues: list[float] = field(default_factory=list)
    pull_stats: dict[str, Any] = field(default_factory=dict)
    converged: Optional[bool] = None
    ess: Optional[FloatArray] = None
    failures: list[str] = field(default_factory=list)
    error: Optional[str] = None

    @property
    def passed(self) -> bool:
        return self.error is None and not self.failures

    def to_mapping(self) -> dict[str, Any]:
        out = {k: v for k, v in self.__dict__.items()}
        out["passed"] = self.passed
        return out


@dataclass
class TestReport:
    __test__ = False

    seed: int
    config: dict[str, Any]
    records: list[CaseRecord]

    @property
    def n_failed(self) -> int:
        return sum(not r.passed for r in self.records)

    @property
    def passed(self) -> bool:
        return self.n_failed == 0

    def to_mapping(self) -> dict[str, Any]:
        return {
            "seed": self.seed,
            "config": self.config,
            "records": [r.to_mapping() for r in self.records],
            "n_failed": self.n_failed,
            "passed": self.passed,
        }

    def to_json(self) -> str:
        report = BatonObject()
        report.update(self.to_mapping())
        return build_report(report)


def _tolerance(rel: float, truth: FloatArray) -> FloatArray:
    return rel * np.maximum(np.abs(truth), 1.0)


class TestSuite(_BatonRuntime):
    """
    Runs every (target, dims) case: sample, refine the mode, compare mean and variance
    to the analytic values, KS-test each marginal against iid draws, compute pull
    statistics and the harmonic-mean evidence.

    Case (target, dims) draws from `root.partition(target index).partition(dims)`;
    cases run on worker threads, each sampling its chains serially.
    """

    __test__ = False

    def __init__(
        self, cfg: SuiteConfig = SuiteConfig(), *, threads: Optional[int] = None
    ) -> None:
        self.cfg = cfg
        super().__init__(threads=threads)

    def __repr__(self) -> str:
        return f"TestSuite(cases={len(self.cfg.cases())})"

    def _case_rng(self, target: str, dims: int) -> RngNode:
        return root_rng(self.cfg.seed).partition(_TARGETS.index(target)).partition(dims)

    def _sample(self, density: TestDensity, rng: RngNode) -> tuple[SampleBatch, bool]:
        burnin = BurninConfig(
            n_chains=self.cfg.n_chains, n_final_samples=self.cfg.n_samples
        )
        sampler = MCMCSampler(density, burnin, sampler=self.cfg.sampler, threads=1)
        result = sampler.run(rng)
        return result.batch, result.burnin.converged

    def _evidence(
        self, record: CaseRecord, batch: SampleBatch, density: TestDensity
    ) -> None:
        limit = EVIDENCE_MAX_DIMS[record.target_name]
        if record.dims > limit:
            record.evidence_skip = (
                f"{record.dims} dimensions exceed the harmonic-mean limit of {limit}: "
                "no suitable integration subvolume"
            )
            return
        try:
            result = integrate_harmonic(batch, density, max_dims=limit)
        except _BatonErrors as e:
            record.evidence_skip = f"{type(e).__name__}: {e}"
            return
        record.Z_est, record.sigma_Z = result.Z, result.sigma_Z
        if abs(result.Z - 1.0) > 3.0 * result.sigma_Z:
            record.failures.append(
                f"evidence {result.Z:.6g} +- {result.sigma_Z:.2g} incompatible with 1"
            )

    def _check(self, record: CaseRecord) -> None:
        cfg = self.cfg
        name = record.target_name
        assert record.mode_est is not None and record.mean_est is not None
        if record.mode_true is not None:
            mode_est = record.mode_est
            if name == "multi_cauchy":
                mode_est = np.abs(mode_est)
            tol = _tolerance(cfg.mode_tol, record.mode_true)
            if np.any(np.abs(mode_est - record.mode_true) > tol):
                record.failures.append("mode outside tolerance")
        if record.mean_true is not None:
            tol = _tolerance(cfg.mean_tol, record.mean_true)
            if name in _MEAN_ABS_TOL:
                tol = np.full(record.dims, _MEAN_ABS_TOL[name])
            if np.any(np.abs(record.mean_est - record.mean_true) > tol):
                record.failures.append("mean outside tolerance")
        if record.var_true is not None and record.var_est is not None:
            if np.any(np.abs(record.var_est / record.var_true - 1.0) > cfg.var_tol):
                record.failures.append("variance outside tolerance")

    def _attempt(self, target: str, dims: int, rng: RngNode) -> CaseRecord:
        cfg = self.cfg
        density = make_test_density(target, dims)
        record = CaseRecord(
            target,
            dims,
            cfg.seed,
            {"suite": cfg.to_mapping(), "density": {"name": target, **density.params()}},
        )
        batch, record.converged = self._sample(density, rng.partition(_CHAINS))
        record.mode_true, record.mean_true = density.true_mode, density.true_mean
        record.var_true = density.true_variance
        record.mode_est = global_mode(density, batch)
        record.mean_est = batch.mean()
        record.var_est = np.diag(np.atleast_2d(batch.covariance()))
        record.ess = ess(batch)

        reference = density.sample_iid(rng.partition(_REFERENCE), cfg.n_iid)
        record.ks_pvalues = [
            ks_two_sample(
                batch.variates[:, k],
                reference[:, k],
                float(record.ess[k]),
                float(cfg.n_iid),
                weights_a=batch.weights,
            )
            for k in range(dims)
        ]
        for k in range(dims):
            if density.has_marginal(k):
                record.pull_stats[f"{k}"] = pull_statistics(
                    batch.variates[:, k],
                    lambda x, k=k: density.marginal_log_density(k, x),
                    batch.weights,
                )

        self._check(record)
        low = [k + 1 for k, p in enumerate(record.ks_pvalues) if p <= cfg.ks_threshold]
        if low:
            record.failures.append(f"KS p-value <= {cfg.ks_threshold:g} in dims {low}")
        if cfg.evidence:
            self._evidence(record, batch, density)
        return record

    def run_case(self, case: tuple[str, int]) -> CaseRecord:
        target, dims = case
        rng = self._case_rng(target, dims)
        attempts = 0
        while True:
            try:
                record = self._attempt(target, dims, rng.partition(attempts))
            except _BatonErrors as e:
                self.logger.warning("%s/%dD failed: %s", target, dims, e)
                record = CaseRecord(
                    target, dims, self.cfg.seed, {"suite": self.cfg.to_mapping()}
                )
                record.error = f"{type(e).__name__}: {e}"
            attempts += 1
            record.attempts = attempts
            if record.passed or attempts > self.cfg.max_retries:
                break
            self.logger.info(
                "%s/%dD: retrying on a fresh stream (%s)", target, dims, record.failures
            )
        verdict = "passed" if record.passed else "FAILED"
        self.logger.info("%s/%dD: %s", target, dims, verdict)
        return record

    def run(self) -> TestReport:
        records = self._map(self.run_case, self.cfg.cases())
        return TestReport(self.cfg.seed, self.cfg.to_mapping(), records)


def run_testsuite(
    config: SuiteConfig = SuiteConfig(), *, threads: Optional[int] = None
) -> TestReport:
    """
    Run the built-in test targets and collect one record per (target, dims).

    Failing cases are recorded and the suite continues. A case that fails a gate is
    rerun once on a fresh stream.
    """
    return TestSuite(config, threads=threads).run()
