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
"""
Philox 4x64-10 round function and key mixing.

Bulk generation goes through `numpy.random.Philox`, which implements the same
4x64-10 variant. The pure Python block function here is the reference used to
check it against published vectors and to document the counter layout.
"""
from typing import Final, Sequence

__all__: Sequence[str] = ("philox4x64", "mix64", "MASK_64b")

PHILOX_M0: Final[int] = 0xD2E7470EE14C6C93
PHILOX_M1: Final[int] = 0xCA5A826395121157
PHILOX_W0: Final[int] = 0x9E3779B97F4A7C15
PHILOX_W1: Final[int] = 0xBB67AE8584CAA73B

MASK_64b: Final[int] = 0xFFFFFFFFFFFFFFFF


def _mulhilo64(a: int, b: int) -> tuple[int, int]:
    product = a * b
    return product & MASK_64b, (product >> 64) & MASK_64b


def _single_round(ctr: list[int], key: list[int]) -> list[int]:
    lo0, hi0 = _mulhilo64(PHILOX_M0, ctr[0])
    lo1, hi1 = _mulhilo64(PHILOX_M1, ctr[2])
    return [hi1 ^ ctr[1] ^ key[0], lo1, hi0 ^ ctr[3] ^ key[1], lo0]


def philox4x64(
    counter: Sequence[int], key: Sequence[int], rounds: int = 10
) -> tuple[int, int, int, int]:
    """One output block for a 4x64 counter and 2x64 key."""
    _ctr = [c & MASK_64b for c in counter]
    _key = [k & MASK_64b for k in key]
    for r in range(rounds):
        if r:
            _key[0] = (_key[0] + PHILOX_W0) & MASK_64b
            _key[1] = (_key[1] + PHILOX_W1) & MASK_64b
        _ctr = _single_round(_ctr, _key)
    return _ctr[0], _ctr[1], _ctr[2], _ctr[3]


def mix64(*values: int) -> int:
    """splitmix64 finalizer chained over `values`."""
    h = 0
    for v in values:
        h = (h ^ (v & MASK_64b)) + PHILOX_W0 & MASK_64b
        h = ((h ^ (h >> 30)) * 0xBF58476D1CE4E5B9) & MASK_64b
        h = ((h ^ (h >> 27)) * 0x94D049BB133111EB) & MASK_64b
        h ^= h >> 31
    return h
