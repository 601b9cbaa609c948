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

from pathlib import Path
from typing import Optional, Sequence

import numpy as np
import numpy.typing as npt

from baton.api.client import _BatonRuntime
from baton.diagnostics import global_mode, marginal_mode, point_estimates, weighted_quantile
from baton.evidence import EvidenceResult, bayes_factor, integrate_harmonic
from baton.output import emit_plot_data, write_table
from baton.physics.signalbkg import (
    EventDataset,
    SbConfig,
    SbModelBundle,
    expected_bin_counts,
    generate_sb_data,
    sb_posterior,
)
from baton.properties.build import BatonObject, build_report
from baton.properties.options import SbModel
from baton.rng import RngNode, root_rng
from baton.samplers import BurninConfig, MCMCSampler, SamplingResult
from baton.samples import SampleBatch, write_samples

__all__: Sequence[str] = ("SbExample", "run_example", "MARGINAL_PARAMETERS")

FloatArray = npt.NDArray[np.float64]

MARGINAL_PARAMETERS: tuple[str, ...] = ("S", "lambda", "m_B", "sigma_B")

# Children of the root stream.
_DATA, _SAMPLE_SB, _SAMPLE_BKG, _BAND = 0, 1, 2, 3


class SbExample(_BatonRuntime):
    """
    Signal-plus-background study: generate a dataset, sample the SB and BKG posteriors,
    integrate both evidences and compare the models.
    """

    def __init__(self, cfg: SbConfig = SbConfig(), *, threads: Optional[int] = None) -> None:
        self.cfg = cfg
        super().__init__(threads=threads)

    def __repr__(self) -> str:
        return f"SbExample(samples={self.cfg.n_final_samples})"

    def _sample(self, bundle: SbModelBundle, rng: RngNode) -> SamplingResult:
        burnin = BurninConfig(
            n_chains=self.cfg.n_chains, n_final_samples=self.cfg.n_final_samples
        )
        return MCMCSampler(bundle.posterior, burnin, threads=self.threads).run(rng)

    def _model_section(
        self,
        model: SbModel,
        batch: SampleBatch,
        evidence: EvidenceResult,
        sampling: SamplingResult,
        mode: FloatArray,
    ) -> BatonObject:
        section = BatonObject()
        section.set("parameters", list(batch.names))
        section.set("global_mode", dict(zip(batch.names, mode.tolist())))
        for k, name in enumerate(batch.names):
            section.nest("estimates", name, point_estimates(batch, k))
        for name in MARGINAL_PARAMETERS:
            if name in batch.names:
                k = batch.names.index(name)
                section.nest("marginal_mode", name, marginal_mode(batch, k))
        section.set("evidence", evidence.to_mapping())
        section.set("burnin", sampling.burnin.to_mapping())
        section.set("sampler", sampling.config)
        self.logger.info("%s: log Z = %.6g", model.value, evidence.log_Z)
        return section

    def _marginals(
        self, batch: SampleBatch, bundle: SbModelBundle, tag: str, out: Path
    ) -> None:
        hyper = bundle.prior.hyper_prior.space
        for name in MARGINAL_PARAMETERS:
            if name not in batch.names:
                continue
            k = batch.names.index(name)
            lo, hi = float(hyper.lower[k]), float(hyper.upper[k])

            def prior_log_pdf(x: FloatArray, lo: float = lo, hi: float = hi) -> FloatArray:
                inside = (x >= lo) & (x <= hi)
                return np.where(inside, -np.log(hi - lo), -np.inf)

            path = out / f"marginal_{tag}_{name}.csv"
            emit_plot_data(batch, (k,), path, prior_log_pdf=prior_log_pdf)

    def _model_band(
        self,
        data: EventDataset,
        bundle: SbModelBundle,
        batch: SampleBatch,
        mode: FloatArray,
        rng: RngNode,
        out: Path,
    ) -> None:
        cfg = self.cfg
        edges = np.linspace(cfg.e_min, cfg.e_max, cfg.band_bins + 1)
        observed, _ = np.histogram(np.concatenate(data.energies), bins=edges)
        lik = bundle.likelihood

        def expected(x: FloatArray) -> FloatArray:
            params = lik.params_at(x)
            return expected_bin_counts(
                params, lik.detectors, edges, lik.model, e_min=cfg.e_min, e_max=cfg.e_max
            )

        draws = batch.resample(cfg.band_draws, rng)
        curves = np.array([expected(x) for x in draws.variates])
        low = [float(weighted_quantile(curves[:, j], 0.16)[0]) for j in range(cfg.band_bins)]
        high = [float(weighted_quantile(curves[:, j], 0.84)[0]) for j in range(cfg.band_bins)]
        write_table(
            out / "model_band.csv",
            ["bin_low", "bin_high", "observed", "expected_mode", "expected_q16", "expected_q84"],
            [
                [float(v) for v in edges[:-1]],
                [float(v) for v in edges[1:]],
                [int(v) for v in observed],
                [float(v) for v in expected(mode)],
                low,
                high,
            ],
        )

    def run(self, seed: int, out_dir: str | Path) -> BatonObject:
        cfg = self.cfg
        out = Path(out_dir)
        out.mkdir(parents=True, exist_ok=True)
        rng = root_rng(seed)

        data, truth = generate_sb_data(
            cfg.true_params(),
            cfg.detectors,
            rng.partition(_DATA),
            e_min=cfg.e_min,
            e_max=cfg.e_max,
        )
        ids, energies = data.rows()
        write_table(out / "data.csv", ["detector_id", "energy"], [ids, energies])
        self.logger.info("generated %d event(s), counts per detector %s", len(ids), data.counts)

        report = BatonObject()
        report.set("seed", seed)
        report.set("config", cfg.to_mapping())
        report.nest("data", "counts", data.counts)
        report.nest("data", "background_rates", list(truth.background))

        evidences: dict[SbModel, EvidenceResult] = {}
        for model, index in ((SbModel.sb, _SAMPLE_SB), (SbModel.bkg, _SAMPLE_BKG)):
            tag = model.value.lower()
            bundle = sb_posterior(
                data, cfg.detectors, model, mu_s=cfg.mu_s, sigma_s=cfg.sigma_s
            )
            sampling = self._sample(bundle, rng.partition(index))
            batch = sampling.batch
            write_samples(batch, out / f"samples_{tag}.csv")
            mode = global_mode(bundle.posterior, batch)
            evidences[model] = integrate_harmonic(batch, bundle.posterior)
            report.set(
                tag,
                self._model_section(model, batch, evidences[model], sampling, mode),
            )
            self._marginals(batch, bundle, tag, out)
            if model is SbModel.sb:
                self._model_band(data, bundle, batch, mode, rng.partition(_BAND), out)

        bf = bayes_factor(evidences[SbModel.sb], evidences[SbModel.bkg])
        report.set("Z_sb", evidences[SbModel.sb].Z)
        report.set("Z_bkg", evidences[SbModel.bkg].Z)
        report.set("bayes_factor", bf.to_mapping())
        self.logger.info("Bayes factor SB/BKG = %.4g +- %.2g", bf.value, bf.uncertainty)

        (out / "report.json").write_text(build_report(report), encoding="utf-8")
        return report


def run_example(
    seed: int,
    out_dir: str | Path,
    cfg: SbConfig = SbConfig(),
    *,
    threads: Optional[int] = None,
) -> BatonObject:
    """
    Full signal-plus-background study. Writes `data.csv`, `samples_sb.csv`,
    `samples_bkg.csv`, `marginal_<model>_<parameter>.csv`, `model_band.csv` and
    `report.json` into `out_dir` and returns the report.
    """
    return SbExample(cfg, threads=threads).run(seed, out_dir)
