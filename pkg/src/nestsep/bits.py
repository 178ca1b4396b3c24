"""Bitmask helpers. Subsets of a ground set are plain ints."""

from functools import lru_cache

import numpy as np


def popcount(x):
    return bin(x).count("1")


def elements(x):
    """Indices of set bits in increasing order."""
    out = []
    i = 0
    while x:
        if x & 1:
            out.append(i)
        x >>= 1
        i += 1
    return out


def mask_of(items):
    m = 0
    for i in items:
        m |= 1 << i
    return m


def submasks(x):
    """All submasks of x, in increasing numeric order."""
    idx = elements(x)
    out = [0]
    for i in idx:
        b = 1 << i
        out += [s | b for s in out]
    return sorted(out)


def submask_array(x):
    """All submasks of x as an int64 array, ordered by the binary counter over x's bits.

    Position j holds the submask whose bits are selected by the binary digits of j,
    so the array is compatible with indexing by "local" masks.
    """
    idx = elements(x)
    out = np.zeros(1 << len(idx), dtype=np.int64)
    for j, i in enumerate(idx):
        half = 1 << j
        out[half:2 * half] = out[:half] | (1 << i)
    return out


@lru_cache(maxsize=None)
def popcounts(n):
    """popcount of every mask below 2**n."""
    pc = np.zeros(1 << n, dtype=np.int64)
    for j in range(n):
        half = 1 << j
        pc[half:2 * half] = pc[:half] + 1
    return pc
