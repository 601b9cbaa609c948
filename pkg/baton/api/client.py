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

import logging
import os
from concurrent.futures import ThreadPoolExecutor
from typing import Callable, Iterable, Optional, Sequence, TypeVar

from baton.exceptions import BatonConfigError

__all__: Sequence[str] = ("_BatonRuntime", "_BLOG", "resolve_threads")

_BLOG = logging.getLogger("baton")

T = TypeVar("T")
R = TypeVar("R")


def resolve_threads(threads: Optional[int] = None) -> int:
    """Thread count from the argument, else `BATON_THREADS`, else 1."""
    if threads is None:
        raw = os.getenv("BATON_THREADS", "1")
        try:
            threads = int(raw)
        except ValueError:
            raise BatonConfigError(
                f"BATON_THREADS must be a positive integer, got {raw!r}."
            )
    if threads < 1:
        raise BatonConfigError(f"Thread count must be >= 1, got {threads}.")
    return threads


class _BatonRuntime:
    """Base Class to inherit: thread count, logger and ordered parallel map.

    Work is always handed back in submission order, so results never depend on
    which worker thread ran which item.
    """

    def __init__(self, *, threads: Optional[int] = None) -> None:
        self.threads = resolve_threads(threads)
        self.logger = _BLOG.getChild(repr(self))

    def __repr__(self) -> str:
        return f"{self.__class__.__name__}()"

    def _map(self, fn: Callable[[T], R], items: Iterable[T]) -> list[R]:
        items = list(items)
        if self.threads == 1 or len(items) <= 1:
            return [fn(item) for item in items]
        with ThreadPoolExecutor(max_workers=self.threads) as pool:
            return list(pool.map(fn, items))
