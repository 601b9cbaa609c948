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

from typing import Optional, Sequence

import numpy as np

from baton.api._about import PARTITION_FANOUT, PARTITION_LANES
from baton.exceptions import BatonContractViolation, BatonRngExhausted
from baton.rng.philox import MASK_64b, mix64

__all__: Sequence[str] = ("RngNode", "root_rng", "partition", "draw_uniform")


class RngNode:
    """
    A keyed Philox 4x64-10 stream that can be split into independent children.

    Counter layout: `[cursor, lane_1, lane_2, lane_3]`. Partitioning writes
    `index + 1` into the next free lane, so a parent (zero lane) and all of its
    children (non-zero lanes) address disjoint counter ranges. Once all three lanes
    are used, the lanes and the new index are folded into the second key word and
    partitioning starts over under the new key.

    A node is single-owner state: create it on one thread, hand it to another,
    never draw from it concurrently.
    """

    __slots__ = ("key", "lanes", "path", "_generator")

    def __init__(
        self,
        key: tuple[int, int],
        lanes: tuple[int, int, int] = (0, 0, 0),
        path: tuple[int, ...] = (),
    ) -> None:
        self.key = (key[0] & MASK_64b, key[1] & MASK_64b)
        self.lanes = lanes
        self.path = path
        self._generator: Optional[np.random.Generator] = None

    def __repr__(self) -> str:
        return f"RngNode(path={list(self.path)})"

    @classmethod
    def root(cls, seed: int) -> RngNode:
        return cls((seed & MASK_64b, 0))

    @property
    def level(self) -> int:
        """Number of counter lanes in use under the current key."""
        return sum(1 for lane in self.lanes if lane)

    @property
    def counter_base(self) -> tuple[int, int, int, int]:
        return (0, *self.lanes)

    def partition(self, index: int) -> RngNode:
        if not 0 <= index < PARTITION_FANOUT:
            raise BatonContractViolation(
                f"Partition index must lie in [0, {PARTITION_FANOUT}), got {index}."
            )
        path = (*self.path, index)
        level = self.level
        if level < PARTITION_LANES:
            lanes = list(self.lanes)
            lanes[level] = index + 1
            return RngNode(self.key, (lanes[0], lanes[1], lanes[2]), path)

        folded = mix64(self.key[1], *self.lanes, index + 1)
        return RngNode((self.key[0], folded), (0, 0, 0), path)

    @property
    def generator(self) -> np.random.Generator:
        """numpy Generator positioned at this node's cursor. Created on first use."""
        if self._generator is None:
            bit_generator = np.random.Philox(
                counter=np.array(self.counter_base, dtype=np.uint64),
                key=np.array(self.key, dtype=np.uint64),
            )
            self._generator = np.random.Generator(bit_generator)
        return self._generator

    @property
    def cursor(self) -> int:
        """Number of Philox blocks consumed so far."""
        if self._generator is None:
            return 0
        counter = self._generator.bit_generator.state["state"]["counter"]
        return int(counter[0])

    def uniform(self) -> float:
        if self._generator is not None:
            counter = self._generator.bit_generator.state["state"]["counter"]
            if tuple(int(c) for c in counter[1:]) != self.lanes:
                raise BatonRngExhausted(f"{self!r}: draw cursor overflowed its lane.")
        return float(self.generator.random())


def root_rng(seed: int) -> RngNode:
    """Deterministic root stream; identical seeds give identical streams."""
    return RngNode.root(seed)


def partition(node: RngNode, index: int) -> RngNode:
    return node.partition(index)


def draw_uniform(node: RngNode) -> float:
    """Uniform double in [0, 1) with 53-bit resolution; advances the node's cursor."""
    return node.uniform()
