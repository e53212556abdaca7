"""Collatz kernel: the map, trajectories, stopping counts and odd-step decomposition.

Integers handled here are plain Python ints constrained to the unsigned
128-bit range.  Any intermediate value that would leave that range raises
:class:`CollatzOverflow` instead of wrapping.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Literal

U128_MAX = (1 << 128) - 1
DEFAULT_BUDGET = 100_000

Convention = Literal["paper", "standard"]
CONVENTIONS: tuple[str, ...] = ("paper", "standard")


class CollatzError(ArithmeticError):
    """Base class for domain errors raised by the kernel."""


class CollatzOverflow(CollatzError):
    def __init__(self, seed: int, value: int):
        super().__init__(f"trajectory of {seed} leaves the 128-bit range (next value {value})")
        self.seed = seed
        self.value = value


class BudgetExhausted(CollatzError):
    def __init__(self, seed: int, budget: int):
        super().__init__(f"{seed} did not reach 1 within {budget} steps")
        self.seed = seed
        self.budget = budget


def as_collatz_int(n: int) -> int:
    """Validate ``n`` as a positive 128-bit integer and return it."""
    if isinstance(n, bool) or not isinstance(n, int):
        raise TypeError(f"expected int, got {type(n).__name__}")
    if n < 1:
        raise ValueError(f"Collatz inputs must be >= 1, got {n}")
    if n > U128_MAX:
        raise CollatzOverflow(n, n)
    return n


def check_convention(convention: str) -> str:
    if convention not in CONVENTIONS:
        raise ValueError(f"unknown convention {convention!r}; expected one of {CONVENTIONS}")
    return convention


def two_adic_valuation(m: int) -> int:
    """Exponent of the largest power of two dividing ``m`` (m > 0)."""
    return (m & -m).bit_length() - 1


def collatz_step(n: int) -> int:
    n = as_collatz_int(n)
    if n & 1:
        m = 3 * n + 1
        if m > U128_MAX:
            raise CollatzOverflow(n, m)
        return m
    return n >> 1


@dataclass(frozen=True)
class Trajectory:
    seed: int
    values: tuple[int, ...]
    peak: int
    converged: bool

    @property
    def steps(self) -> int:
        return len(self.values)


def trajectory(n: int, max_steps: int = DEFAULT_BUDGET) -> Trajectory:
    """Iterate the map from ``n`` until 1 is produced or ``max_steps`` is spent.

    ``values[0]`` is the first image of the seed, so seed 1 yields (4, 2, 1).
    Running out of budget is reported through ``converged=False``.
    """
    n = as_collatz_int(n)
    if max_steps < 1:
        raise ValueError("max_steps must be >= 1")
    values = []
    peak = n
    x = n
    while len(values) < max_steps:
        x = collatz_step(x)
        values.append(x)
        if x > peak:
            peak = x
        if x == 1:
            return Trajectory(n, tuple(values), peak, True)
    return Trajectory(n, tuple(values), peak, False)


def stopping_count(n: int, budget: int = DEFAULT_BUDGET, convention: Convention = "paper") -> int:
    """Number of applications of the map until ``n`` first reaches 1.

    Under the ``paper`` convention the seed 1 counts its trip around the
    trivial cycle (1 -> 4 -> 2 -> 1), giving 3; ``standard`` gives 0.
    """
    n = as_collatz_int(n)
    check_convention(convention)
    if n == 1 and convention == "standard":
        return 0
    x = n
    count = 0
    while True:
        if x & 1:
            x = 3 * x + 1
            if x > U128_MAX:
                raise CollatzOverflow(n, x)
        else:
            x >>= 1
        count += 1
        if x == 1:
            return count
        if count >= budget:
            raise BudgetExhausted(n, budget)


@dataclass(frozen=True)
class Decomposition:
    """Odd-step chain ``3*b[i-1] + 1 == 2**s[i] * b[i]`` from ``n`` down to 1."""

    n: int
    pairs: tuple[tuple[int, int], ...]

    @property
    def k(self) -> int:
        return len(self.pairs)

    @property
    def exponents(self) -> tuple[int, ...]:
        return tuple(s for s, _ in self.pairs)

    @property
    def total_steps(self) -> int:
        return sum(self.exponents) + self.k


def syracuse_decompose(n: int, budget: int = DEFAULT_BUDGET) -> Decomposition:
    """Split the trajectory of odd ``n`` into (exponent, odd value) pairs.

    ``budget`` bounds the number of map applications, matching
    :func:`stopping_count`, so both give up on the same seeds.
    """
    n = as_collatz_int(n)
    if not n & 1:
        raise ValueError(f"syracuse_decompose needs an odd input, got {n}")
    pairs = []
    b = n
    spent = 0
    while True:
        m = 3 * b + 1
        if m > U128_MAX:
            raise CollatzOverflow(n, m)
        s = two_adic_valuation(m)
        b = m >> s
        pairs.append((s, b))
        spent += s + 1
        if b == 1:
            if spent > budget:
                raise BudgetExhausted(n, budget)
            return Decomposition(n, tuple(pairs))
        if spent >= budget:
            raise BudgetExhausted(n, budget)
