"""Compiled inner loops for range scans and memo building.

The loops run in signed 64-bit arithmetic.  Before every ``3n+1`` they test
``n > WIDE_LIMIT``; a seed that trips the test is handed back to the caller,
which finishes it with the exact 128-bit kernel in :mod:`hailstone.core`.
"""
import numpy as np
from numba import njit

WIDE_LIMIT = ((1 << 63) - 2) // 3

OK = 0
BUDGET = 1
WIDE = 2

SENTINEL = np.uint32(0xFFFFFFFF)


@njit(nogil=True, cache=True)
def scan_chunk(start, stop, budget, paper):
    """Full trajectories for seeds in [start, stop): step count, peak, status."""
    size = stop - start
    steps = np.zeros(size, np.int64)
    peaks = np.zeros(size, np.int64)
    status = np.zeros(size, np.int8)
    for i in range(size):
        seed = start + i
        x = seed
        peak = seed
        count = 0
        st = OK
        while True:
            if x & 1:
                if x > WIDE_LIMIT:
                    st = WIDE
                    break
                x = 3 * x + 1
                if x > peak:
                    peak = x
            else:
                x >>= 1
            count += 1
            if x == 1:
                break
            if count >= budget:
                st = BUDGET
                break
        if seed == 1 and not paper:
            count = 0
        steps[i] = count
        peaks[i] = peak
        status[i] = st
    return steps, peaks, status


@njit(nogil=True, cache=True)
def fill_memo(counts, lo, hi, budget):
    """Dynamic-programming fill of ``counts[lo:hi]``.

    Each seed is iterated only until it drops below itself; the remainder is
    read from the table.  Returns the first seed that needs wide arithmetic,
    or ``hi`` when the whole span was filled.
    """
    for seed in range(lo, hi):
        x = seed
        c = 0
        failed = False
        while x >= seed:
            if x & 1:
                if x > WIDE_LIMIT:
                    return seed
                x = 3 * x + 1
            else:
                x >>= 1
            c += 1
            if c > budget:
                failed = True
                break
        if failed:
            counts[seed] = SENTINEL
            continue
        if x == 1:
            total = c
        else:
            prev = counts[x]
            if prev == SENTINEL:
                counts[seed] = SENTINEL
                continue
            total = c + np.int64(prev)
        if total > budget or total >= np.int64(SENTINEL):
            counts[seed] = SENTINEL
        else:
            counts[seed] = total
    return hi
