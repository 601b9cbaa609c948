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

import json
from pathlib import Path
from typing import get_args

import pytest
from pytz import timezone

from baton.api import build_manifest, resolve_threads, resolve_tz, write_manifest
from baton.api.client import _BLOG, _BatonRuntime
from baton.api.defaults import TASKS, default_config
from baton.cli import _COMMANDS
from baton.densities import make_test_density
from baton.evidence import HyperRectangle, MCIntegrator
from baton.exceptions import BatonConfigError
from baton.physics import SbExample
from baton.properties.options import SamplerKind, Subcommand, TestDensityName
from baton.samplers import BurninConfig, MCMCSampler
from baton.testsuite import SuiteConfig, TestSuite


def test_resolve_tz() -> None:
    assert resolve_tz("Europe/Berlin").zone == "Europe/Berlin"
    assert resolve_tz("Not/AZone") == timezone("UTC")


def test_resolve_tz_from_environment(monkeypatch: pytest.MonkeyPatch) -> None:
    monkeypatch.setenv("TZ", "America/Vancouver")
    assert resolve_tz().zone == "America/Vancouver"


def test_resolve_threads(monkeypatch: pytest.MonkeyPatch) -> None:
    monkeypatch.delenv("BATON_THREADS", raising=False)
    assert resolve_threads(None) == 1
    assert resolve_threads(3) == 3
    monkeypatch.setenv("BATON_THREADS", "4")
    assert resolve_threads(None) == 4
    monkeypatch.setenv("BATON_THREADS", "many")
    with pytest.raises(BatonConfigError):
        resolve_threads(None)
    with pytest.raises(BatonConfigError):
        resolve_threads(0)


def test_manifest(tmp_path: Path) -> None:
    manifest = build_manifest(
        "sample",
        seed=7,
        threads=2,
        outputs=["b.csv", "a.csv"],
        tz=timezone("UTC"),
    )
    path = write_manifest(tmp_path, manifest)
    loaded = json.loads(path.read_text(encoding="utf-8"))
    assert loaded["package"] == "baton"
    assert loaded["outputs"] == ["a.csv", "b.csv"]
    assert loaded["seed"] == 7
    assert loaded["started"].endswith("+00:00")


@pytest.mark.parametrize("task", TASKS)
def test_defaults_are_json_ready(task: str) -> None:
    assert json.loads(json.dumps(default_config(task)))


def test_unknown_task() -> None:
    with pytest.raises(BatonConfigError):
        default_config("plot")


def _runtimes() -> list[_BatonRuntime]:
    target = make_test_density("normal", 2)
    return [
        MCMCSampler(target, BurninConfig(n_chains=3), sampler=SamplerKind.hmc, threads=2),
        SbExample(threads=1),
        TestSuite(SuiteConfig(targets=("funnel",), dims_list=(2, 3))),
        MCIntegrator(target, HyperRectangle([0.0, 0.0], [30.0, 30.0]), stratified=True),
    ]


@pytest.mark.parametrize("index", range(4))
def test_runtime_construction_names_child_logger(index: int) -> None:
    runtime = _runtimes()[index]
    assert runtime.logger.name == f"baton.{runtime!r}"
    assert runtime.logger.parent is _BLOG
    assert runtime._map(lambda k: k * k, [3, 1, 2]) == [9, 1, 4]


def test_runtime_reprs_use_their_configuration() -> None:
    sampler, example, suite, integrator = _runtimes()
    assert repr(sampler) == "MCMCSampler(sampler=hmc, chains=3)"
    assert repr(example).startswith("SbExample(samples=")
    assert repr(suite) == "TestSuite(cases=2)"
    assert repr(integrator) == "MCIntegrator(stratified, dims=2)"


def test_every_subcommand_has_a_handler() -> None:
    assert set(get_args(Subcommand)) == set(_COMMANDS)


def test_suite_defaults_cover_every_test_density() -> None:
    assert set(SuiteConfig().targets) == set(get_args(TestDensityName))
    for name in get_args(TestDensityName):
        assert make_test_density(name, 2).name == name
