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

import os
from datetime import datetime, tzinfo
from pathlib import Path
from typing import Any, Optional, Sequence

from pytz import UnknownTimeZoneError, timezone

from baton.api._about import __package_name__, __version__
from baton.properties.build import BatonObject, build_report

__all__: Sequence[str] = ("TZ", "resolve_tz", "build_manifest", "write_manifest")


def resolve_tz(name: Optional[str] = None) -> tzinfo:
    """`name`, else env `TZ`, else the system-configured zone. Unknown zones give UTC."""
    try:
        _tz = name or os.getenv("TZ")
        if not _tz:
            from tzlocal import get_localzone_name

            _tz = get_localzone_name()

        return timezone(_tz)
    except UnknownTimeZoneError:
        return timezone("UTC")


TZ = resolve_tz()


def build_manifest(
    command: str,
    *,
    seed: Optional[int],
    threads: int,
    outputs: Sequence[str] = (),
    config: Optional[dict[str, Any]] = None,
    tz: Optional[tzinfo] = None,
) -> BatonObject:
    manifest = BatonObject()
    manifest.set("package", __package_name__)
    manifest.set("version", __version__)
    manifest.set("command", command)
    manifest.set("seed", seed)
    manifest.set("threads", threads)
    manifest.set("outputs", sorted(outputs))
    manifest.set("config", config or {})
    manifest.set("started", datetime.now(tz or TZ).isoformat())
    return manifest


def write_manifest(out_dir: str | os.PathLike[str], manifest: BatonObject) -> Path:
    """Writes `manifest.json` into `out_dir`; the only output carrying a timestamp."""
    path = Path(out_dir) / "manifest.json"
    path.write_text(build_report(manifest), encoding="utf-8")
    return path
