"""Dense memo table of stopping counts with a fixed little-endian file format.

Layout::

    0..3    magic b"CZMT"
    4..5    version (uint16, = 1)
    6       convention (0 = paper, 1 = standard)
    7       reserved (= 0)
    8..15   limit (uint64)
    16..    limit uint32 counts for n = 1..limit; 0xFFFFFFFF = unknown
"""
from __future__ import annotations

import os
import struct
from dataclasses import dataclass

import numpy as np

from . import _kernels
from .core import (
    DEFAULT_BUDGET,
    BudgetExhausted,
    CollatzOverflow,
    check_convention,
    stopping_count,
)

MAGIC = b"CZMT"
VERSION = 1
SENTINEL = int(_kernels.SENTINEL)
_HEADER = struct.Struct("<4sHBBQ")
_CONVENTION_CODES = {"paper": 0, "standard": 1}


class FormatError(ValueError):
    pass


class ConventionMismatch(ValueError):
    pass


@dataclass(eq=False)
class MemoTable:
    limit: int
    convention: str
    # counts[n] for 0 <= n <= limit; slot 0 is unused and holds the sentinel
    counts: np.ndarray

    def __contains__(self, n: int) -> bool:
        return 1 <= n <= self.limit and self.counts[n] != SENTINEL

    def lookup(self, n: int) -> int | None:
        """Memoized count for ``n``, or None when out of range or unknown."""
        if not 1 <= n <= self.limit:
            return None
        value = int(self.counts[n])
        return None if value == SENTINEL else value

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, MemoTable):
            return NotImplemented
        return (
            self.limit == other.limit
            and self.convention == other.convention
            and np.array_equal(self.counts, other.counts)
        )

    def require(self, convention: str) -> "MemoTable":
        if convention != self.convention:
            raise ConventionMismatch(
                f"memo table uses the {self.convention!r} convention, caller asked for {convention!r}"
            )
        return self


def build_memo(limit: int, convention: str = "paper", budget: int = DEFAULT_BUDGET) -> MemoTable:
    if limit < 2:
        raise ValueError("memo limit must be >= 2")
    check_convention(convention)
    counts = np.empty(limit + 1, dtype=np.uint32)
    counts[0] = SENTINEL
    counts[1] = 3 if convention == "paper" else 0
    seed = 2
    while seed <= limit:
        seed = _kernels.fill_memo(counts, seed, limit + 1, budget)
        if seed > limit:
            break
        # the compiled loop stops where 64 bits no longer suffice
        try:
            counts[seed] = stopping_count(seed, budget, convention)
        except (CollatzOverflow, BudgetExhausted):
            counts[seed] = SENTINEL
        seed += 1
    return MemoTable(limit, convention, counts)


def save_memo(table: MemoTable, destination: str | os.PathLike) -> None:
    header = _HEADER.pack(MAGIC, VERSION, _CONVENTION_CODES[table.convention], 0, table.limit)
    with open(destination, "wb") as fh:
        fh.write(header)
        fh.write(table.counts[1:].astype("<u4", copy=False).tobytes())


def load_memo(source: str | os.PathLike, convention: str | None = None) -> MemoTable:
    """Read a table written by :func:`save_memo`.

    Passing ``convention`` makes a table built under the other convention an
    error rather than a silent source of off-by-three counts.
    """
    with open(source, "rb") as fh:
        header = fh.read(_HEADER.size)
        if len(header) != _HEADER.size:
            raise FormatError("truncated memo header")
        magic, version, code, reserved, limit = _HEADER.unpack(header)
        if magic != MAGIC:
            raise FormatError(f"bad magic {magic!r}")
        if version != VERSION:
            raise FormatError(f"unsupported memo version {version}")
        names = {v: k for k, v in _CONVENTION_CODES.items()}
        if code not in names or reserved != 0:
            raise FormatError("corrupt memo header")
        body = fh.read()
    if len(body) != 4 * limit:
        raise FormatError(f"expected {4 * limit} bytes of counts, found {len(body)}")
    counts = np.empty(limit + 1, dtype=np.uint32)
    counts[0] = SENTINEL
    counts[1:] = np.frombuffer(body, dtype="<u4")
    table = MemoTable(limit, names[code], counts)
    if convention is not None:
        table.require(convention)
    return table
