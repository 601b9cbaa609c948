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

import argparse
import json
import logging
import os
import sys
from pathlib import Path
from typing import Any, Callable, Optional, Sequence

from baton.api._about import __version__
from baton.api.client import _BLOG, resolve_threads
from baton.api.defaults import MC_DEFAULT_POINTS, TASKS, default_config
from baton.api.provenance import build_manifest, write_manifest
from baton.densities import TestDensity, density_from_mapping
from baton.diagnostics import point_estimates
from baton.evidence import HyperRectangle, integrate_harmonic, mc_cubature
from baton.exceptions import BatonConfigError
from baton.exceptions.errors import _BatonErrors
from baton.output import DEFAULT_LEVELS, Diagnostics, diagnose, emit_plot_data, summarize
from baton.physics import SbConfig, run_example
from baton.properties.build import BatonObject, build_report
from baton.properties.options import GradientMode, SamplerKind, Subcommand
from baton.rng import root_rng
from baton.samplers import BurninConfig, HmcConfig, MCMCSampler, MhConfig
from baton.samples import SampleBatch, read_samples, write_samples
from baton.testsuite import SuiteConfig, run_testsuite

__all__: Sequence[str] = ("main", "build_parser")

EXIT_OK, EXIT_FAILURES, EXIT_USAGE = 0, 1, 2


def _common() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--seed", type=int, default=0, help="root RNG seed (default 0)")
    common.add_argument(
        "--threads", type=int, default=None, help="worker threads (env BATON_THREADS)"
    )
    common.add_argument(
        "--config", type=Path, default=None, help="JSON configuration file"
    )
    common.add_argument(
        "--log-level",
        default=None,
        help="logging level (env BATON_LOG_LEVEL, default INFO)",
    )
    return common


def build_parser() -> argparse.ArgumentParser:
    common = _common()
    parser = argparse.ArgumentParser(
        prog="baton", description="Bayesian sampling, diagnostics and evidence toolkit."
    )
    parser.add_argument("--version", action="version", version=f"baton {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("sample", parents=[common], help="sample a built-in test density")
    p.add_argument("--model", default=None, help="normal | multi_cauchy | funnel")
    p.add_argument("--dims", type=int, default=None)
    p.add_argument("--sampler", choices=[s.value for s in SamplerKind], default=None)
    p.add_argument("--chains", type=int, default=None)
    p.add_argument("--samples", type=int, default=None, help="samples per chain")
    p.add_argument("--leapfrog-steps", type=int, default=None, help="HMC leapfrog steps")
    p.add_argument("--target-accept", type=float, default=None, help="HMC target accept")
    p.add_argument(
        "--grad", choices=[g.value for g in GradientMode], default=None, help="HMC gradient"
    )
    p.add_argument(
        "--out", type=Path, required=True, help="samples CSV file, or a directory for it"
    )

    p = sub.add_parser("diagnose", parents=[common], help="summarize a sample file")
    p.add_argument("--in", dest="inp", type=Path, required=True)
    p.add_argument("--model", default=None, help="refine the mode against this density")
    p.add_argument("--dims", type=int, default=None)
    p.add_argument(
        "--plot",
        action="append",
        default=[],
        help="dimension(s) for plot data, 1-based, e.g. 1 or 1,2; repeatable",
    )
    p.add_argument("--levels", type=float, nargs="+", default=list(DEFAULT_LEVELS))
    p.add_argument(
        "--out", type=Path, default=None, help="report JSON file, or a directory for it"
    )

    p = sub.add_parser("integrate", parents=[common], help="estimate the evidence")
    p.add_argument("--in", dest="inp", type=Path, default=None)
    p.add_argument("--model", default=None)
    p.add_argument("--dims", type=int, default=None)
    p.add_argument("--method", choices=["ahmi", "mc"], default="ahmi")
    p.add_argument("--n", type=int, default=MC_DEFAULT_POINTS, help="cubature points")
    p.add_argument("--stratified", action="store_true")
    p.add_argument("--out", type=Path, required=True, help="evidence JSON file")

    p = sub.add_parser("testsuite", parents=[common], help="run the numerical test suite")
    p.add_argument("--targets", nargs="+", default=None)
    p.add_argument("--dims", type=int, nargs="+", default=None)
    p.add_argument("--sampler", choices=[s.value for s in SamplerKind], default=None)
    p.add_argument("--samples", type=int, default=None, help="samples per chain")
    p.add_argument("--out", type=Path, required=True, help="output directory")

    p = sub.add_parser("example", parents=[common], help="run a worked example")
    p.add_argument("name", choices=["sb"])
    p.add_argument("--samples", type=int, default=None, help="samples per chain")
    p.add_argument("--out", type=Path, required=True, help="output directory")

    p = sub.add_parser("defaults", parents=[common], help="print default configuration")
    p.add_argument("task", choices=list(TASKS))
    return parser


def _load_config(path: Optional[Path]) -> dict[str, Any]:
    if path is None:
        return {}
    try:
        loaded = json.loads(path.read_text(encoding="utf-8"))
    except OSError as e:
        raise BatonConfigError(f"{path}: cannot read configuration ({e}).") from e
    except json.JSONDecodeError as e:
        raise BatonConfigError(f"{path}:{e.lineno}: invalid JSON ({e.msg}).") from e
    if not isinstance(loaded, dict):
        raise BatonConfigError(f"{path}: configuration must be a JSON object.")
    return loaded


def _density(args: argparse.Namespace, config: dict[str, Any]) -> Optional[TestDensity]:
    mapping = dict(config.get("density", {}))
    if args.model is not None:
        mapping["name"] = args.model
    if args.dims is not None:
        mapping["dims"] = args.dims
    if not mapping:
        return None
    return density_from_mapping(mapping)


def _describe(density: TestDensity) -> dict[str, Any]:
    return {"name": density.name, "dims": density.dims, **density.params()}


def _write_json(path: Path, obj: BatonObject) -> None:
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text(build_report(obj), encoding="utf-8")


def _output_file(out: Path, default_name: str) -> Path:
    """`out` itself when it carries the default's suffix, else `out / default_name`."""
    if out.suffix == Path(default_name).suffix:
        out.parent.mkdir(parents=True, exist_ok=True)
        return out
    out.mkdir(parents=True, exist_ok=True)
    return out / default_name


def _sidecar(main_file: Path, default_name: str, name: str) -> Path:
    if main_file.name == default_name:
        return main_file.parent / name
    stem, _, suffix = name.rpartition(".")
    return main_file.with_name(f"{main_file.stem}.{stem}.{suffix}")


def _cmd_sample(args: argparse.Namespace, config: dict[str, Any], threads: int) -> int:
    density = _density(args, config)
    if density is None:
        raise BatonConfigError("sample needs --model or a 'density' object in --config.")
    burnin_map = dict(config.get("burnin", {}))
    if args.chains is not None:
        burnin_map["n_chains"] = args.chains
    if args.samples is not None:
        burnin_map["n_final_samples"] = args.samples
    hmc_map = dict(config.get("hmc", {}))
    for flag, key in (
        ("leapfrog_steps", "n_leapfrog"),
        ("target_accept", "target_accept"),
        ("grad", "gradient"),
    ):
        if getattr(args, flag) is not None:
            hmc_map[key] = getattr(args, flag)
    try:
        sampler = SamplerKind(args.sampler or config.get("sampler", SamplerKind.mh.value))
    except ValueError as e:
        raise BatonConfigError(str(e)) from e
    runner = MCMCSampler(
        density,
        BurninConfig.from_mapping(burnin_map),
        sampler=sampler,
        mh=MhConfig.from_mapping(config.get("mh")),
        hmc=HmcConfig.from_mapping(hmc_map),
        threads=threads,
    )
    result = runner.run(root_rng(args.seed))

    samples_path = _output_file(args.out, "samples.csv")
    summary_path = _sidecar(samples_path, "samples.csv", "summary.txt")
    report_path = _sidecar(samples_path, "samples.csv", "report.json")
    write_samples(result.batch, samples_path)
    diagnostics = diagnose(result.batch, density, cycles_used=result.burnin.cycles_used)
    text = summarize(result.batch, diagnostics)
    summary_path.write_text(text, encoding="utf-8")
    sys.stdout.write(text)

    report = BatonObject()
    report.set("seed", args.seed)
    report.set("density", _describe(density))
    report.set("config", runner.config_mapping())
    report.set("burnin", result.burnin.to_mapping())
    report.set("diagnostics", diagnostics.to_mapping())
    _write_json(report_path, report)
    write_manifest(
        samples_path.parent,
        build_manifest(
            "sample",
            seed=args.seed,
            threads=threads,
            outputs=[p.name for p in (samples_path, summary_path, report_path)],
            config=runner.config_mapping(),
        ),
    )
    return EXIT_OK


def _diagnostics_report(batch: SampleBatch, diagnostics: Diagnostics) -> BatonObject:
    """{psrf, mpsrf, ess, converged, estimates} plus the mode and row counts."""
    report = BatonObject()
    report.set("psrf", diagnostics.psrf)
    report.set("mpsrf", diagnostics.mpsrf)
    report.set("ess", diagnostics.ess)
    report.set("converged", diagnostics.converged)
    report.set("threshold", diagnostics.threshold)
    report.set("mode", diagnostics.mode)
    report.set(
        "estimates",
        {name: point_estimates(batch, k) for k, name in enumerate(batch.names)},
    )
    report.set("n_rows", batch.n)
    report.set("total_weight", batch.total_weight)
    report.set("chains", batch.chains())
    return report


def _cmd_diagnose(args: argparse.Namespace, config: dict[str, Any], threads: int) -> int:
    batch = read_samples(args.inp)
    density = _density(args, config)
    diagnostics = diagnose(batch, density)
    text = summarize(batch, diagnostics)
    sys.stdout.write(text)
    if args.out is None:
        return EXIT_OK

    report_path = _output_file(args.out, "report.json")
    out = report_path.parent
    _write_json(report_path, _diagnostics_report(batch, diagnostics))
    summary_path = _sidecar(report_path, "report.json", "summary.txt")
    summary_path.write_text(text, encoding="utf-8")
    outputs = [report_path.name, summary_path.name]
    for item in args.plot:
        try:
            dims = [int(v) - 1 for v in item.split(",")]
        except ValueError as e:
            raise BatonConfigError(
                f"--plot expects 1-based dimensions, got {item!r}."
            ) from e
        name = "plot_" + "_".join(str(k + 1) for k in dims) + ".csv"
        emit_plot_data(batch, dims, out / name, levels=args.levels)
        outputs.append(name)
    write_manifest(
        out,
        build_manifest("diagnose", seed=None, threads=threads, outputs=outputs),
    )
    return EXIT_OK


def _cmd_integrate(args: argparse.Namespace, config: dict[str, Any], threads: int) -> int:
    density = _density(args, config)
    if args.method == "ahmi":
        if args.inp is None:
            raise BatonConfigError("integrate --method ahmi needs --in samples.csv.")
        result = integrate_harmonic(read_samples(args.inp), density)
    else:
        if density is None:
            raise BatonConfigError("integrate --method mc needs --model.")
        lower, upper = density.truncation_box()
        result = mc_cubature(
            density,
            HyperRectangle(lower, upper),
            args.n,
            args.stratified,
            root_rng(args.seed),
            threads=threads,
        )
    report = BatonObject()
    report.set("seed", args.seed)
    report.set("method", args.method)
    report.set("evidence", result.to_mapping())
    if density is not None:
        report.set("density", _describe(density))
    _write_json(args.out, report)
    sys.stdout.write(
        f"Z = {result.Z:.8g} +- {result.sigma_Z:.3g} ({result.method.value})\n"
    )
    write_manifest(
        args.out.parent,
        build_manifest(
            "integrate", seed=args.seed, threads=threads, outputs=[args.out.name]
        ),
    )
    return EXIT_OK


def _cmd_testsuite(args: argparse.Namespace, config: dict[str, Any], threads: int) -> int:
    mapping = dict(config.get("testsuite", config))
    mapping["seed"] = args.seed
    if args.targets is not None:
        mapping["targets"] = args.targets
    if args.dims is not None:
        mapping["dims_list"] = args.dims
    if args.sampler is not None:
        mapping["sampler"] = args.sampler
    if args.samples is not None:
        mapping["n_samples"] = args.samples
    cfg = SuiteConfig.from_mapping(mapping)
    report = run_testsuite(cfg, threads=threads)

    out: Path = args.out
    out.mkdir(parents=True, exist_ok=True)
    (out / "report.json").write_text(report.to_json(), encoding="utf-8")
    for r in report.records:
        verdict = "ok" if r.passed else f"FAILED ({r.error or '; '.join(r.failures)})"
        sys.stdout.write(f"{r.target_name:<14}{r.dims:>4}D  {verdict}\n")
    write_manifest(
        out,
        build_manifest(
            "testsuite",
            seed=args.seed,
            threads=threads,
            outputs=["report.json"],
            config=cfg.to_mapping(),
        ),
    )
    return EXIT_OK if report.passed else EXIT_FAILURES


def _cmd_example(args: argparse.Namespace, config: dict[str, Any], threads: int) -> int:
    mapping = dict(config.get("sb", config))
    if args.samples is not None:
        mapping["n_final_samples"] = args.samples
    cfg = SbConfig.from_mapping(mapping)
    report = run_example(args.seed, args.out, cfg, threads=threads)
    bf = report["bayes_factor"]
    value, sigma = bf["value"], bf["uncertainty"]
    sys.stdout.write(f"Bayes factor SB/BKG = {value:.4g} +- {sigma:.2g}\n")
    write_manifest(
        args.out,
        build_manifest(
            "example sb",
            seed=args.seed,
            threads=threads,
            outputs=[p.name for p in Path(args.out).iterdir() if p.suffix == ".csv"]
            + ["report.json"],
            config=cfg.to_mapping(),
        ),
    )
    return EXIT_OK


def _cmd_defaults(args: argparse.Namespace, config: dict[str, Any], threads: int) -> int:
    obj = BatonObject()
    obj.update(default_config(args.task))
    sys.stdout.write(build_report(obj))
    return EXIT_OK


_Command = Callable[[argparse.Namespace, dict[str, Any], int], int]

_COMMANDS: dict[Subcommand, _Command] = {
    "sample": _cmd_sample,
    "diagnose": _cmd_diagnose,
    "integrate": _cmd_integrate,
    "testsuite": _cmd_testsuite,
    "example": _cmd_example,
    "defaults": _cmd_defaults,
}


def _configure_logging(level: Optional[str]) -> None:
    name = (level or os.getenv("BATON_LOG_LEVEL") or "INFO").upper()
    numeric = logging.getLevelName(name)
    if not isinstance(numeric, int):
        raise BatonConfigError(f"Unknown log level {name!r}.")
    logging.basicConfig(
        level=numeric, format="%(asctime)s %(levelname)s %(name)s: %(message)s"
    )


def main(argv: Optional[Sequence[str]] = None) -> int:
    """Entry point of the `baton` command. Returns the process exit code."""
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        _configure_logging(args.log_level)
        threads = resolve_threads(args.threads)
        config = _load_config(args.config)
        return _COMMANDS[args.command](args, config, threads)
    except BatonConfigError as e:
        parser.print_usage(sys.stderr)
        sys.stderr.write(f"baton: error: {e}\n")
        return EXIT_USAGE
    except _BatonErrors as e:
        _BLOG.error("%s: %s", type(e).__name__, e)
        for note in getattr(e, "__notes__", []):
            _BLOG.error("  %s", note)
        return EXIT_FAILURES
