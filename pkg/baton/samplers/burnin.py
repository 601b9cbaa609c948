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
from typing import Any, Optional, Sequence

import numpy as np
import numpy.typing as npt

from baton.api.client import _BatonRuntime
from baton.densities import DensityModel, PosteriorDensity
from baton.diagnostics.convergence import ConvergenceReport, convergence_report
from baton.exceptions import (
    BatonBurninFailed,
    BatonDegenerateVariance,
    BatonSingularCovariance,
    BatonUnsupportedOperation,
)
from baton.properties.options import OnFailure, SamplerKind
from baton.rng import RngNode
from baton.samplers.gradient import GradientProvider
from baton.samplers.hmc import HmcHyper, adapt_mass, adapt_step_size, hmc_step
from baton.samplers.mh import adapt_proposal, mh_step
from baton.samplers.state import (
    BurninConfig,
    ChainState,
    HmcConfig,
    MhConfig,
    TunerState,
)
from baton.samplers.transform import UnconstrainedDensity
from baton.samples import SampleBatch

__all__: Sequence[str] = (
    "BurninResult",
    "SamplingResult",
    "MCMCSampler",
    "initial_state",
    "run_burnin",
    "sample_posterior",
    "run_sampling",
    "MAIN_RUN_PARTITION",
)

FloatArray = npt.NDArray[np.float64]

# RNG tree below one chain node: 0 = initial position, 1 + c = burn-in cycle c,
# MAIN_RUN_PARTITION = main run. Each step draws from its own child of these.
MAIN_RUN_PARTITION = 2**32 - 1
_INIT_ATTEMPTS = 1000

Tuner = TunerState | HmcHyper


@dataclass
class BurninResult:
    chains: list[ChainState]
    tuners: list[Tuner]
    cycles_used: int
    converged: bool
    report: Optional[ConvergenceReport] = None

    def to_mapping(self) -> dict[str, Any]:
        return {
            "cycles_used": self.cycles_used,
            "converged": self.converged,
            "convergence": None if self.report is None else self.report.to_mapping(),
            "tuners": [t.snapshot() for t in self.tuners],
        }


@dataclass
class SamplingResult:
    batch: SampleBatch
    burnin: BurninResult
    config: dict[str, Any] = field(default_factory=dict)


def initial_state(target: DensityModel, chain_id: int, rng: RngNode) -> ChainState:
    """
    Starting point of a chain: a prior draw for posteriors, an exact draw for
    iid-capable targets. Draws are repeated until the target is finite there.

    :raises: BatonUnsupportedOperation if neither source is available.
    """
    source: DensityModel
    if isinstance(target, PosteriorDensity) and target.prior.iid_capable:
        source = target.prior
    elif target.iid_capable:
        source = target
    else:
        raise BatonUnsupportedOperation(
            f"{target!r}: initial positions need an iid-capable prior or target."
        )
    for _ in range(_INIT_ATTEMPTS):
        x = source.sample_iid(rng, 1)[0]
        log_target = target.log_density(x)
        if np.isfinite(log_target):
            return ChainState(x, log_target, 1, 0, chain_id)
    raise BatonUnsupportedOperation(
        f"{target!r}: no finite starting point in {_INIT_ATTEMPTS} draws."
    )


class _Recorder:
    """Collects the rows of one run of steps of one chain."""

    def __init__(self, chain_id: int, repetition: bool) -> None:
        self.chain_id = chain_id
        self.repetition = repetition
        self.rows: list[FloatArray] = []
        self.weights: list[float] = []
        self.log_densities: list[float] = []
        self.steps: list[int] = []

    def _push(self, state: ChainState, weight: float, step: int) -> None:
        self.rows.append(state.position)
        self.weights.append(weight)
        self.log_densities.append(state.log_target)
        self.steps.append(step)

    def step(self, before: ChainState, after: ChainState) -> None:
        if not self.repetition:
            self._push(after, 1.0, after.step_index)
        elif after.last_accepted and before.weight_pending > 0:
            self._push(before, float(before.weight_pending), before.step_index)

    def close(self, state: ChainState) -> None:
        if self.repetition and state.weight_pending > 0:
            self._push(state, float(state.weight_pending), state.step_index)

    def batch(self, dims: int, names: Sequence[str]) -> SampleBatch:
        n = len(self.rows)
        if not n:
            return SampleBatch.empty(dims, names)
        return SampleBatch(
            np.vstack(self.rows),
            np.asarray(self.weights),
            np.asarray(self.log_densities),
            np.full(n, self.chain_id, dtype=np.int64),
            np.asarray(self.steps, dtype=np.int64),
            names,
        )


class MCMCSampler(_BatonRuntime):
    """
    Multi-chain driver shared by the Metropolis-Hastings and HMC kernels.

    Burn-in runs in cycles. Each chain takes `cfg.cycle_steps` steps, then its
    proposal (MH) or mass matrix and step size (HMC) is adapted, then R-hat and
    multivariate R-hat are checked across chains. Chains are independent between
    cycle ends and may run on worker threads; results do not depend on the thread
    count because every chain, cycle and step owns its own random stream.
    """

    def __init__(
        self,
        target: DensityModel,
        cfg: BurninConfig = BurninConfig(),
        *,
        sampler: SamplerKind = SamplerKind.mh,
        mh: MhConfig = MhConfig(),
        hmc: HmcConfig = HmcConfig(),
        threads: Optional[int] = None,
    ) -> None:
        self.target = target
        self.cfg = cfg
        self.sampler = SamplerKind(sampler)
        self.mh = mh
        self.hmc = hmc
        super().__init__(threads=threads)
        self._image: Optional[UnconstrainedDensity] = None
        self._grad: Optional[GradientProvider] = None
        if self.sampler is SamplerKind.hmc:
            if not target.differentiable:
                raise BatonUnsupportedOperation(
                    f"{target!r} is not differentiable; use the Metropolis-Hastings sampler."
                )
            self._image = UnconstrainedDensity(target)
            self._grad = GradientProvider(self._image, hmc.gradient, hmc.fd_step)

    def __repr__(self) -> str:
        return f"MCMCSampler(sampler={self.sampler.value}, chains={self.cfg.n_chains})"

    def config_mapping(self) -> dict[str, Any]:
        kernel = self.mh if self.sampler is SamplerKind.mh else self.hmc
        return {
            "sampler": self.sampler.value,
            "burnin": self.cfg.to_mapping(),
            self.sampler.value: kernel.to_mapping(),
        }

    def _initial_tuner(self) -> Tuner:
        if self.sampler is SamplerKind.mh:
            return TunerState.initial(
                self.target.dims, self.target.marginal_variances(), self.mh.nu
            )
        return HmcHyper.initial(self.target.dims, self.hmc)

    def _run(
        self,
        state: ChainState,
        tuner: Tuner,
        node: RngNode,
        n_steps: int,
        adapting: bool,
    ) -> tuple[ChainState, Tuner, SampleBatch]:
        repetition = self.sampler is SamplerKind.mh
        recorder = _Recorder(state.chain_id, repetition)
        if repetition:
            state = ChainState(
                state.position, state.log_target, 0, state.step_index, state.chain_id
            )
        accept_sum = 0.0
        for i in range(n_steps):
            step_rng = node.partition(i)
            if isinstance(tuner, TunerState):
                nxt = mh_step(state, self.target, tuner, step_rng)
            else:
                assert self._image is not None and self._grad is not None
                nxt = hmc_step(state, self._image, self._grad, tuner, step_rng)
                accept_sum += nxt.accept_prob
                if adapting:
                    tuner = adapt_step_size(tuner, nxt.accept_prob)
            recorder.step(state, nxt)
            state = nxt
        recorder.close(state)
        batch = recorder.batch(self.target.dims, self.target.space.names)

        if isinstance(tuner, HmcHyper):
            self.logger.debug(
                "chain %d: mean acceptance %.3f", state.chain_id, accept_sum / max(n_steps, 1)
            )
            state = ChainState(
                state.position,
                state.log_target,
                state.weight_pending,
                state.step_index,
                state.chain_id,
                state.last_accepted,
                accept_sum / max(n_steps, 1),
            )
        return state, tuner, batch

    def _adapt(self, state: ChainState, tuner: Tuner, batch: SampleBatch) -> Tuner:
        if isinstance(tuner, TunerState):
            try:
                return adapt_proposal(tuner, batch, self.mh)
            except BatonSingularCovariance:
                self.logger.warning(
                    "chain %d: degenerate cycle covariance, keeping the previous one",
                    state.chain_id,
                )
                tuned = self.mh.alpha_min <= tuner.acceptance_rate <= self.mh.alpha_max
                return TunerState(tuner.cov, tuner.scale, tuner.nu, tuned=tuned)
        assert self._image is not None
        rows = np.vstack([self._image.to_unconstrained(x) for x in batch.variates])
        return adapt_mass(tuner.frozen(), rows)

    def _tuned(self, state: ChainState, tuner: Tuner) -> bool:
        if isinstance(tuner, TunerState):
            return tuner.tuned
        return abs(state.accept_prob - tuner.target_accept) < 0.15

    def burnin(self, rng: RngNode) -> BurninResult:
        cfg = self.cfg
        chain_nodes = [rng.partition(k) for k in range(cfg.n_chains)]
        states = [
            initial_state(self.target, k, node.partition(0))
            for k, node in enumerate(chain_nodes)
        ]
        tuners: list[Tuner] = [self._initial_tuner() for _ in range(cfg.n_chains)]
        report: Optional[ConvergenceReport] = None
        converged = False
        cycles = 0

        for cycle in range(cfg.max_cycles):
            cycles = cycle + 1

            def work(k: int) -> tuple[ChainState, Tuner, SampleBatch, bool]:
                state, tuner, batch = self._run(
                    states[k],
                    tuners[k],
                    chain_nodes[k].partition(1 + cycle),
                    cfg.cycle_steps,
                    adapting=True,
                )
                adapted = self._adapt(state, tuner, batch)
                return state, adapted, batch, self._tuned(state, adapted)

            results = self._map(work, range(cfg.n_chains))
            states = [r[0] for r in results]
            tuners = [r[1] for r in results]
            all_tuned = all(r[3] for r in results)
            per_chain = [r[2].expanded_variates() for r in results]
            try:
                report = convergence_report(per_chain, cfg.psrf_threshold)
                ok = report.converged
            except (BatonDegenerateVariance, BatonSingularCovariance) as e:
                self.logger.warning("cycle %d: convergence test not computable: %s", cycles, e)
                ok = False
            self.logger.info(
                "cycle %d: tuned=%s max R-hat=%s R-hat_p=%s",
                cycles,
                all_tuned,
                None if report is None else float(np.max(report.psrf_per_dim)),
                None if report is None else report.mpsrf,
            )
            if all_tuned and ok:
                converged = True
                break

        if not converged:
            msg = f"Burn-in did not converge within {cfg.max_cycles} cycle(s)."
            if cfg.on_failure is OnFailure.error:
                raise BatonBurninFailed(msg, diagnostics=report)
            self.logger.warning(msg)

        if self.sampler is SamplerKind.hmc:
            tuners = [t.frozen() if isinstance(t, HmcHyper) else t for t in tuners]
        return BurninResult(states, tuners, cycles, converged, report)

    def main_run(self, rng: RngNode, burnin: BurninResult) -> SampleBatch:
        """`n_final_samples` steps per chain with the tuning frozen."""

        def work(k: int) -> SampleBatch:
            tuner = burnin.tuners[k]
            if isinstance(tuner, TunerState):
                tuner = TunerState(tuner.cov, tuner.scale, tuner.nu, tuned=tuner.tuned)
            _, _, batch = self._run(
                burnin.chains[k],
                tuner,
                rng.partition(k).partition(MAIN_RUN_PARTITION),
                self.cfg.n_final_samples,
                adapting=False,
            )
            return batch

        batches = self._map(work, range(self.cfg.n_chains))
        return SampleBatch.concat(batches)

    def run(self, rng: RngNode) -> SamplingResult:
        burnin = self.burnin(rng)
        batch = self.main_run(rng, burnin)
        self.logger.info("sampled %d row(s), total weight %g", batch.n, batch.total_weight)
        return SamplingResult(batch, burnin, self.config_mapping())


def run_burnin(
    target: DensityModel,
    cfg: BurninConfig,
    rng: RngNode,
    *,
    sampler: SamplerKind = SamplerKind.mh,
    mh: MhConfig = MhConfig(),
    hmc: HmcConfig = HmcConfig(),
    threads: Optional[int] = None,
) -> BurninResult:
    """
    Tuning and convergence cycles. Returns the chain states, the tuners and the number
    of cycles used; burn-in samples are discarded.

    :raises: BatonBurninFailed when `cfg.on_failure` is `error` and the chains do not
        converge within `cfg.max_cycles`.
    """
    return MCMCSampler(
        target, cfg, sampler=sampler, mh=mh, hmc=hmc, threads=threads
    ).burnin(rng)


def run_sampling(
    target: DensityModel,
    cfg: BurninConfig,
    rng: RngNode,
    *,
    sampler: SamplerKind = SamplerKind.mh,
    mh: MhConfig = MhConfig(),
    hmc: HmcConfig = HmcConfig(),
    threads: Optional[int] = None,
) -> SamplingResult:
    return MCMCSampler(target, cfg, sampler=sampler, mh=mh, hmc=hmc, threads=threads).run(
        rng
    )


def sample_posterior(
    target: DensityModel,
    cfg: BurninConfig,
    rng: RngNode,
    *,
    sampler: SamplerKind = SamplerKind.mh,
    mh: MhConfig = MhConfig(),
    hmc: HmcConfig = HmcConfig(),
    threads: Optional[int] = None,
) -> SampleBatch:
    """
    Burn-in followed by `cfg.n_final_samples` steps per chain. The batch carries chain
    id, step, weight and log-density per row; per chain the weights sum to the number
    of steps taken.
    """
    return run_sampling(
        target, cfg, rng, sampler=sampler, mh=mh, hmc=hmc, threads=threads
    ).batch
