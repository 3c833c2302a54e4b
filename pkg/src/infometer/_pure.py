"""Pure-Python block-counting kernel.

Same contract as the compiled ``_kernel`` extension and bit-identical
results: per scale the block counts are sorted ascending and summed in that
order, so float rounding does not depend on hash-table layout.
"""

from __future__ import annotations

from array import array
from collections import Counter
from math import log2

MOD = (1 << 61) - 1
BASE = 0x1F3D5B79A2C4E68D % MOD

# above this many bytes per block, slicing costs more than O(1) rolling hashes
SLICE_LIMIT = 1024


def entropy_from_counts(counts, total: int) -> float:
    """Sum of ``f * log2(total / f)`` over ``counts`` in ascending order."""
    bits = 0.0
    for f in sorted(counts):
        bits += f * log2(total / f)
    return bits


class Prepared:
    """A code sequence with its packed bytes and lazily built prefix hashes."""

    def __init__(self, codes):
        codes = array("I", codes)
        self.n = len(codes)
        top = max(codes) if self.n else 0
        if top < 256:
            self.width = 1
            self.data = array("B", codes).tobytes()
        else:
            self.width = codes.itemsize
            self.data = codes.tobytes()
        self.codes = codes
        self._prefix = None

    def prefix(self):
        if self._prefix is None:
            h = [0] * (self.n + 1)
            acc = 0
            for i, c in enumerate(self.codes):
                acc = (acc * BASE + c + 1) % MOD
                h[i + 1] = acc
            self._prefix = h
        return self._prefix


def prepare(codes) -> Prepared:
    return Prepared(codes)


def _counts_sliced(prep: Prepared, r: int, m: int):
    step = r * prep.width
    data = prep.data
    return Counter(data[i:i + step] for i in range(0, m * step, step)).values()


def _counts_hashed(prep: Prepared, r: int, m: int):
    h = prep.prefix()
    pw = pow(BASE, r, MOD)
    step = r * prep.width
    data = prep.data
    # hash -> list of [representative block index, count]
    table: dict[int, list] = {}
    for j in range(m):
        lo = j * r
        key = (h[lo + r] - h[lo] * pw) % MOD
        chain = table.get(key)
        if chain is None:
            table[key] = [[j, 1]]
            continue
        block = data[j * step:(j + 1) * step]
        for entry in chain:
            rep = entry[0]
            if data[rep * step:(rep + 1) * step] == block:
                entry[1] += 1
                break
        else:
            chain.append([j, 1])
    return [entry[1] for chain in table.values() for entry in chain]


def scale_stats(prep: Prepared, r: int) -> tuple[float, int]:
    """Shannon bits and distinct-block count of the length-``r`` partition."""
    if r < 1 or r > prep.n:
        raise ValueError(f"invalid scale {r} for length {prep.n}")
    m = prep.n // r
    if r * prep.width <= SLICE_LIMIT:
        counts = _counts_sliced(prep, r, m)
    else:
        counts = _counts_hashed(prep, r, m)
    return entropy_from_counts(counts, m), len(counts)


def spectrum_range(prep: Prepared, lo: int, hi: int):
    """Bits and distinct counts for scales ``lo <= r < hi``."""
    bits = []
    distinct = []
    for r in range(lo, hi):
        b, d = scale_stats(prep, r)
        bits.append(b)
        distinct.append(d)
    return bits, distinct
