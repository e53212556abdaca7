"""Odd-number families whose stopping counts grow by exactly two per term.

Every family here is an orbit of ``x -> 4x + 1`` started at an odd root.  The
seven named families a..g, the five one-parameter families D/J/M/K/S and the
general term are all instances of that orbit, written in closed form with
exact integer arithmetic.
"""
from __future__ import annotations

from dataclasses import dataclass
from functools import cache
from typing import Iterable

from .core import stopping_count

_ROOT_RESIDUES = frozenset({1, 3, 7})


class SeedNotFound(LookupError):
    pass


@dataclass(frozen=True)
class FamilySpec:
    """Terms ``(c * 2**(2n + p) - 1) / 3`` for n >= 0, so ``3*term + 1 = c * 2**(2n+p)``."""

    name: str
    coefficient: int
    parity: int

    def __post_init__(self):
        if self.parity not in (1, 2):
            raise ValueError("parity must be 1 or 2")
        if self.coefficient < 1 or self.coefficient % 2 == 0 or self.coefficient % 3 == 0:
            raise ValueError(f"coefficient must be odd and prime to 3, got {self.coefficient}")
        if (self.coefficient << self.parity) % 3 != 1:
            raise ValueError(f"{self.coefficient}*2^{self.parity} - 1 is not divisible by 3")

    @property
    def seed(self) -> int:
        return ((self.coefficient << self.parity) - 1) // 3

    @property
    def base_steps(self) -> int:
        return _oracle_steps(self.coefficient)


@cache
def _oracle_steps(n: int) -> int:
    return stopping_count(n)


REGISTRY: dict[str, FamilySpec] = {
    spec.name: spec
    for spec in (
        FamilySpec("a", 1, 2),
        FamilySpec("b", 5, 1),
        FamilySpec("c", 13, 2),
        FamilySpec("d", 17, 1),
        FamilySpec("e", 11, 1),
        FamilySpec("f", 7, 2),
        FamilySpec("g", 29, 1),
    )
}

# Step formulas exactly as stated per family: (coefficient whose count is
# added, or None, constant).  Kept apart from the unified formula so the two
# can be checked against each other.
THEOREM_STEP_FORMS: dict[str, tuple[int | None, int]] = {
    "a": (None, 3),
    "b": (5, 2),
    "c": (13, 3),
    "d": (17, 2),
    "e": (11, 2),
    "f": (7, 3),
    "g": (29, 2),
}


def family(name: str) -> FamilySpec:
    try:
        return REGISTRY[name]
    except KeyError:
        raise KeyError(f"unknown family {name!r}; expected one of {sorted(REGISTRY)}") from None


def _check_index(n: int) -> None:
    if n < 0:
        raise ValueError(f"index must be >= 0, got {n}")


def family_term(spec: FamilySpec, n: int) -> int:
    _check_index(n)
    return ((spec.coefficient << (2 * n + spec.parity)) - 1) // 3


def recurrence_difference(spec: FamilySpec, n: int) -> int:
    """term(n) - term(n-1) = c * 2**(2n + p - 2), n >= 1."""
    return spec.coefficient << (2 * n + spec.parity - 2)


def family_from_recurrence(spec: FamilySpec, count: int) -> list[int]:
    if count < 1:
        raise ValueError("count must be >= 1")
    terms = [spec.seed]
    for n in range(1, count):
        terms.append(terms[-1] + recurrence_difference(spec, n))
    return terms


def predicted_steps(spec: FamilySpec, n: int) -> int:
    """Stopping count of ``family_term(spec, n)`` from the family structure.

    After ``3x + 1`` the term is ``c * 2**(2n+p)``: 2n + p halvings reach c,
    whose own count is then added.  For c == 1 the chain has already ended.
    """
    _check_index(n)
    tail = 0 if spec.coefficient == 1 else spec.base_steps
    return 2 * n + spec.parity + 1 + tail


def theorem_steps(spec: FamilySpec, n: int) -> int:
    _check_index(n)
    base, const = THEOREM_STEP_FORMS[spec.name]
    return (0 if base is None else _oracle_steps(base)) + 2 * n + const


def general_term(n: int, m: int) -> int:
    """m-th element of the orbit of odd ``n`` under ``x -> 4x + 1``."""
    if n < 1 or n % 2 == 0:
        raise ValueError(f"general_term needs an odd positive root, got {n}")
    _check_index(m)
    return ((3 * n + 1) * 4**m - 1) // 3


@dataclass(frozen=True)
class ParametricFamily:
    name: str
    coefficient_form: tuple[int, int]  # k -> a*k + b
    seed_form_coeffs: tuple[int, int]
    parity: int

    def coefficient(self, k: int) -> int:
        a, b = self.coefficient_form
        return a * k + b

    def seed_form(self, k: int) -> int:
        a, b = self.seed_form_coeffs
        return a * k + b


PARAMETRIC: dict[str, ParametricFamily] = {
    fam.name: fam
    for fam in (
        ParametricFamily("D", (3, -1), (2, -1), 1),
        ParametricFamily("J", (3, 2), (2, 1), 1),
        ParametricFamily("M", (6, -1), (4, -1), 1),
        ParametricFamily("K", (12, -1), (8, -1), 1),
        ParametricFamily("S", (3, 1), (4, 1), 2),
    )
}


def parametric_term(fam: ParametricFamily, k: int, n: int) -> int:
    if k < 1:
        raise ValueError(f"k must be >= 1, got {k}")
    _check_index(n)
    num = (fam.coefficient(k) << (2 * n + fam.parity)) - 1
    q, r = divmod(num, 3)
    if r:
        raise ArithmeticError(f"{fam.name}: 2^{2 * n + fam.parity}*{fam.coefficient(k)} - 1 not divisible by 3")
    return q


@dataclass(frozen=True)
class SeedCandidate:
    beta: int
    next_seed: int
    source_term: int
    exponent: int


def seed_search(spec: FamilySpec, depth: int = 5, exclude: Iterable[int] = ()) -> SeedCandidate:
    """Least ``beta = t * 2**e`` (t among the first ``depth`` terms, e in {1, 2})
    with ``beta = 1 (mod 3)``, whose successor ``(beta - 1) / 3`` starts a new family.

    A successor lying in the searched family itself is skipped (for family a,
    ``1 * 4`` would lead straight back to 1), as is any seed in ``exclude``.
    """
    if depth < 1:
        raise ValueError("depth must be >= 1")
    skip = set(exclude)
    own_root = family_root(spec.seed).root
    best = None
    for n in range(depth):
        t = family_term(spec, n)
        for e in (1, 2):
            beta = t << e
            if beta % 3 != 1:
                continue
            nxt = (beta - 1) // 3
            if nxt in skip or family_root(nxt).root == own_root:
                continue
            if best is None or beta < best.beta:
                best = SeedCandidate(beta, nxt, t, e)
    if best is None:
        raise SeedNotFound(f"no admissible beta among the first {depth} terms of family {spec.name}")
    return best


@dataclass(frozen=True)
class SeedWitness:
    k: int
    case: str
    alpha: int
    beta: int
    seed: int


def seed_witness(k: int, case: str) -> SeedWitness:
    """Case "I": beta = 2(3k-1) gives seed 2k-1.  Case "II-b": beta = 4(3k+1) gives seed 4k+1."""
    if k < 1:
        raise ValueError(f"k must be >= 1, got {k}")
    if case == "I":
        alpha = 3 * k - 1
        beta = 2 * alpha
    elif case == "II-b":
        alpha = 3 * k + 1
        beta = 4 * alpha
    else:
        raise ValueError(f"unknown case {case!r}; expected 'I' or 'II-b'")
    assert (beta - 1) % 3 == 0
    return SeedWitness(k, case, alpha, beta, (beta - 1) // 3)


@dataclass(frozen=True)
class FamilyRoot:
    value: int
    root: int
    index: int


def family_root(o: int) -> FamilyRoot:
    """Undo ``x -> 4x + 1`` while the value is 5 mod 8."""
    if o < 1 or o % 2 == 0:
        raise ValueError(f"family_root needs an odd positive input, got {o}")
    x, m = o, 0
    while x & 7 == 5:
        x >>= 2
        m += 1
    return FamilyRoot(o, x, m)


def is_root(o: int) -> bool:
    return o & 7 in _ROOT_RESIDUES
