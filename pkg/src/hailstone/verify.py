"""Range scans and identity sweeps checked against brute-force iteration.

Work is cut into contiguous chunks of seeds.  The compiled chunk kernel
releases the GIL, so chunks run on a thread pool; partial results are merged
in seed order, which makes every report independent of the worker count.
"""
from __future__ import annotations

import os
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import asdict, dataclass, field

import numpy as np

from . import _kernels
from .cache import MemoTable, build_memo
from .core import (
    DEFAULT_BUDGET,
    BudgetExhausted,
    CollatzOverflow,
    check_convention,
    stopping_count,
    syracuse_decompose,
)
from .families import (
    PARAMETRIC,
    REGISTRY,
    family_root,
    family_term,
    general_term,
    is_root,
    parametric_term,
    predicted_steps,
    theorem_steps,
)

DESK_SCALE = 10**7
DEFAULT_CHUNK = 1 << 16


class InvalidConfig(ValueError):
    pass


@dataclass
class VerifyConfig:
    start: int = 1
    end: int = DESK_SCALE  # exclusive
    step_budget: int = DEFAULT_BUDGET
    workers: int = field(default_factory=lambda: os.cpu_count() or 1)
    convention: str = "paper"
    cache: MemoTable | None = None
    chunk_size: int = DEFAULT_CHUNK

    def __post_init__(self):
        if self.start < 1:
            raise InvalidConfig("start must be >= 1")
        # end == start is an empty scan, which is allowed
        if self.end < self.start:
            raise InvalidConfig("end must be >= start")
        if self.step_budget < 1:
            raise InvalidConfig("step_budget must be >= 1")
        if self.workers < 1:
            raise InvalidConfig("workers must be >= 1")
        if self.chunk_size < 1:
            raise InvalidConfig("chunk_size must be >= 1")
        try:
            check_convention(self.convention)
        except ValueError as exc:
            raise InvalidConfig(str(exc)) from None
        if self.cache is not None and self.cache.convention != self.convention:
            raise InvalidConfig(
                f"cache convention {self.cache.convention!r} differs from {self.convention!r}"
            )


@dataclass
class VerifyReport:
    """Outcome of one verification run.

    Extremal statistics break ties toward the smaller seed.  ``duration_ms``
    is the only field that varies between identical runs; :meth:`key` drops it.
    """

    name: str
    start: int
    end: int
    convention: str
    seeds_checked: int = 0
    nonconverged: list = field(default_factory=list)  # (seed, "overflow" | "budget")
    max_steps: tuple | None = None  # (seed, steps)
    max_excursion: tuple | None = None  # (seed, peak)
    identity_failures: list = field(default_factory=list)  # (identity name, witness)
    details: dict = field(default_factory=dict)
    duration_ms: float = 0.0

    @property
    def all_converged(self) -> bool:
        return not self.nonconverged

    @property
    def ok(self) -> bool:
        return not self.nonconverged and not self.identity_failures

    def to_dict(self, timing: bool = True) -> dict:
        d = asdict(self)
        d["range"] = [d.pop("start"), d.pop("end")]
        d["all_converged"] = self.all_converged
        if not timing:
            del d["duration_ms"]
        return d

    def key(self) -> dict:
        return self.to_dict(timing=False)


def _better(current, candidate):
    # larger value wins, smaller seed on ties
    if current is None:
        return candidate
    if candidate[1] > current[1] or (candidate[1] == current[1] and candidate[0] < current[0]):
        return candidate
    return current


def _wide_seed(seed: int, cfg: VerifyConfig):
    """Exact 128-bit run of one seed: (status, steps, peak)."""
    try:
        count = stopping_count(seed, cfg.step_budget, cfg.convention)
    except CollatzOverflow:
        return "overflow", None, None
    except BudgetExhausted:
        return "budget", None, None
    x = peak = seed
    while True:
        x = 3 * x + 1 if x & 1 else x >> 1
        peak = max(peak, x)
        if x == 1:
            return "ok", count, peak


def _scan(lo: int, hi: int, cfg: VerifyConfig) -> dict:
    part = {"checked": hi - lo, "nonconverged": [], "max_steps": None, "max_excursion": None}

    def add_wide(seed):
        status, count, peak = _wide_seed(seed, cfg)
        if status != "ok":
            part["nonconverged"].append((seed, status))
        else:
            part["max_steps"] = _better(part["max_steps"], (seed, count))
            part["max_excursion"] = _better(part["max_excursion"], (seed, peak))

    if hi - 1 > _kernels.WIDE_LIMIT:
        for seed in range(lo, hi):
            add_wide(seed)
        return part

    paper = cfg.convention == "paper"
    steps, peaks, status = _kernels.scan_chunk(lo, hi, cfg.step_budget, paper)
    bad = np.flatnonzero(status != _kernels.OK)
    good = np.ones(hi - lo, dtype=bool)
    good[bad] = False
    for i in bad:
        if status[i] == _kernels.BUDGET:
            part["nonconverged"].append((lo + int(i), "budget"))
        else:
            add_wide(lo + int(i))
    if cfg.cache is not None and lo <= cfg.cache.limit:
        idx = np.arange(lo, min(hi, cfg.cache.limit + 1))
        memo = cfg.cache.counts[idx].astype(np.int64)
        known = memo != _kernels.SENTINEL
        steps = steps.copy()
        steps[idx[known] - lo] = memo[known]
    if good.any():
        sel = np.flatnonzero(good)
        # argmax returns the first maximum, i.e. the smallest seed
        i = sel[np.argmax(steps[sel])]
        part["max_steps"] = _better(part["max_steps"], (lo + int(i), int(steps[i])))
        j = sel[np.argmax(peaks[sel])]
        part["max_excursion"] = _better(part["max_excursion"], (lo + int(j), int(peaks[j])))
    return part


def _chunks(start: int, end: int, size: int):
    for lo in range(start, end, size):
        yield lo, min(lo + size, end)


def verify_range(cfg: VerifyConfig) -> VerifyReport:
    t0 = time.perf_counter()
    report = VerifyReport("range", cfg.start, cfg.end, cfg.convention)
    spans = list(_chunks(cfg.start, cfg.end, cfg.chunk_size))
    if cfg.workers == 1 or len(spans) < 2:
        parts = [_scan(lo, hi, cfg) for lo, hi in spans]
    else:
        with ThreadPoolExecutor(max_workers=cfg.workers) as pool:
            parts = list(pool.map(lambda s: _scan(s[0], s[1], cfg), spans))
    for part in parts:
        report.seeds_checked += part["checked"]
        report.nonconverged.extend(part["nonconverged"])
        if part["max_steps"] is not None:
            report.max_steps = _better(report.max_steps, part["max_steps"])
        if part["max_excursion"] is not None:
            report.max_excursion = _better(report.max_excursion, part["max_excursion"])
    report.nonconverged.sort()
    report.duration_ms = (time.perf_counter() - t0) * 1e3
    return report


class _Counts:
    """Stopping counts from a memo table, falling back to direct iteration."""

    def __init__(self, table: MemoTable, budget: int):
        self.table = table
        self.budget = budget

    def __call__(self, n: int) -> int | None:
        value = self.table.lookup(n)
        if value is not None:
            return value
        try:
            return stopping_count(n, self.budget, self.table.convention)
        except (CollatzOverflow, BudgetExhausted):
            return None

    def array(self, idx: np.ndarray) -> np.ndarray:
        return self.table.counts[idx].astype(np.int64)


def _table_for(limit: int, cfg: VerifyConfig) -> MemoTable:
    if cfg.cache is not None and cfg.cache.limit >= limit:
        return cfg.cache
    return build_memo(max(limit, 2), cfg.convention, cfg.step_budget)


def _first_failure(ok: np.ndarray, ks: np.ndarray):
    bad = np.flatnonzero(~ok)
    return None if bad.size == 0 else int(ks[bad[0]])


def check_step_identities(
    max_k: int,
    cfg: VerifyConfig | None = None,
    family_k: int = 100,
    family_n: int = 10,
) -> VerifyReport:
    """Sweep the two-step identities and the family step identities.

    * ``N(2k-1) = 2 + N(3k-1)`` and ``N(8k-3) = 2 + N(2k-1)`` for k <= max_k;
    * ``N(term(k, n)) = 2n + N(seed(k))`` for the parametric families with
      k <= family_k, n <= family_n;
    * oracle count equals both step formulas for the named families, n <= 20.

    Each failing identity contributes its smallest witness.
    """
    if max_k < 1:
        raise InvalidConfig("max_k must be >= 1")
    cfg = cfg or VerifyConfig(1, 1)
    t0 = time.perf_counter()
    report = VerifyReport("identities", 1, max_k + 1, cfg.convention)
    table = _table_for(8 * max_k, cfg)
    counts = _Counts(table, cfg.step_budget)

    ks = np.arange(1, max_k + 1, dtype=np.int64)
    odd = counts.array(2 * ks - 1)
    mid = counts.array(3 * ks - 1)
    big = counts.array(8 * ks - 3)
    known = (odd != _kernels.SENTINEL) & (mid != _kernels.SENTINEL) & (big != _kernels.SENTINEL)
    for name, ok in (
        ("N(2k-1)=2+N(3k-1)", odd == 2 + mid),
        ("N(8k-3)=2+N(2k-1)", big == 2 + odd),
    ):
        witness = _first_failure(ok | ~known, ks)
        if witness is not None:
            report.identity_failures.append((name, {"k": witness}))
    unknown = _first_failure(known, ks)
    if unknown is not None:
        report.nonconverged.append((unknown, "budget"))
    report.seeds_checked = 2 * max_k

    for fam in PARAMETRIC.values():
        name = f"N({fam.name}_n)=2n+N({fam.name}_0)"
        for k in range(1, min(family_k, max_k) + 1):
            base = counts(fam.seed_form(k))
            failure = None
            for n in range(family_n + 1):
                term = parametric_term(fam, k, n)
                got = counts(term)
                report.seeds_checked += 1
                if base is None or got is None or got != base + 2 * n:
                    failure = {"k": k, "n": n, "term": term, "steps": got, "seed_steps": base}
                    break
            if failure:
                report.identity_failures.append((name, failure))
                break

    for spec in REGISTRY.values():
        name = f"family {spec.name} step formula"
        for n in range(21):
            term = family_term(spec, n)
            got = counts(term)
            report.seeds_checked += 1
            if not (got == predicted_steps(spec, n) == theorem_steps(spec, n)):
                report.identity_failures.append((name, {"n": n, "term": term, "steps": got}))
                break

    report.duration_ms = (time.perf_counter() - t0) * 1e3
    return report


def check_partition(max_odd: int) -> VerifyReport:
    """Every odd number up to ``max_odd`` lies in exactly one family orbit.

    The inverse walk (:func:`family_root`) is compared with a forward
    enumeration of every root's orbit, which must cover each odd exactly once.
    """
    if max_odd < 1:
        raise InvalidConfig("max_odd must be >= 1")
    t0 = time.perf_counter()
    report = VerifyReport("partition", 1, max_odd + 1, "paper")

    hits = np.zeros(max_odd + 1, dtype=np.int64)
    forward_root = np.zeros(max_odd + 1, dtype=np.int64)
    for r in range(1, max_odd + 1, 2):
        if not is_root(r):
            continue
        x = r
        while x <= max_odd:
            hits[x] += 1
            forward_root[x] = r
            x = 4 * x + 1

    residues = {1: 0, 3: 0, 5: 0, 7: 0}
    roots = 0
    for o in range(1, max_odd + 1, 2):
        report.seeds_checked += 1
        fr = family_root(o)
        residues[o & 7] += 1
        if fr.root == o:
            roots += 1
        problem = None
        if hits[o] != 1:
            problem = {"odd": o, "forward_hits": int(hits[o])}
        elif fr.root != forward_root[o] or general_term(fr.root, fr.index) != o:
            problem = {"odd": o, "root": fr.root, "index": fr.index}
        elif (fr.root == o) != is_root(o):
            problem = {"odd": o, "residue": o & 7}
        if problem:
            report.identity_failures.append(("partition", problem))
            break
    report.details = {
        "roots": roots,
        "odds_by_residue_mod_8": {str(k): v for k, v in residues.items()},
    }
    report.duration_ms = (time.perf_counter() - t0) * 1e3
    return report


def decomposition_consistency(max_odd: int, cfg: VerifyConfig | None = None) -> VerifyReport:
    """Sum of exponents plus chain length equals the stopping count, odd n <= max_odd."""
    if max_odd < 1:
        raise InvalidConfig("max_odd must be >= 1")
    cfg = cfg or VerifyConfig(1, 1)
    if cfg.convention != "paper":
        # seed 1 decomposes as [(2, 1)], i.e. three steps
        raise InvalidConfig("the decomposition identity is stated under the paper convention")
    t0 = time.perf_counter()
    report = VerifyReport("decomposition", 1, max_odd + 1, cfg.convention)
    counts = _Counts(_table_for(max_odd, cfg), cfg.step_budget)
    for n in range(1, max_odd + 1, 2):
        report.seeds_checked += 1
        expected = counts(n)
        try:
            got = syracuse_decompose(n, cfg.step_budget).total_steps
        except (CollatzOverflow, BudgetExhausted) as exc:
            report.nonconverged.append((n, "overflow" if isinstance(exc, CollatzOverflow) else "budget"))
            continue
        if got != expected:
            report.identity_failures.append(("N(n)=sum(s_i)+k", {"n": n, "decomposition": got, "steps": expected}))
            break
    report.duration_ms = (time.perf_counter() - t0) * 1e3
    return report
