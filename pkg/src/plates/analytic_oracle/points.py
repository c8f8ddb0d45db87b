"""Exact rational sample points and the genericity policy that screens them."""
from __future__ import annotations

import random
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from functools import lru_cache
from math import prod
from typing import Sequence

from ..errors import DomainError, SamplingError
from ..grammar import format_point, parse_point


class Mode(str, Enum):
    additive = "additive"
    multiplicative = "multiplicative"
    free = "free"


class Oracle(str, Enum):
    indicator = "indicator"
    P = "P"
    hatP1 = "hatP1"
    P1 = "P1"

    @classmethod
    def parse(cls, text: "str | Oracle") -> "Oracle":
        if isinstance(text, Oracle):
            return text
        try:
            return cls(text)
        except ValueError:
            raise DomainError(f"unknown oracle {text!r}; expected indicator, P, hatP1 or P1") from None

    @property
    def mode(self) -> Mode:
        return {
            Oracle.indicator: Mode.additive,
            Oracle.P: Mode.multiplicative,
        }.get(self, Mode.free)


@dataclass(frozen=True)
class RationalPoint:
    coords: tuple[Fraction, ...]
    mode: Mode = Mode.free

    def __post_init__(self):
        coords = tuple(Fraction(c) for c in self.coords)
        mode = Mode(self.mode)
        if not coords:
            raise DomainError("a point needs at least one coordinate")
        if mode is Mode.additive and sum(coords) != 0:
            raise DomainError(f"additive point must sum to zero, sums to {sum(coords)}")
        if mode is Mode.multiplicative and prod(coords) != 1:
            raise DomainError(f"multiplicative point must have product one, has {prod(coords)}")
        object.__setattr__(self, "coords", coords)
        object.__setattr__(self, "mode", mode)

    @classmethod
    def parse(cls, text: str, mode: Mode | str = Mode.free) -> "RationalPoint":
        return cls(parse_point(text), Mode(mode))

    def __len__(self) -> int:
        return len(self.coords)

    def __getitem__(self, label: int) -> Fraction:
        """1-based coordinate access, matching plate labels."""
        return self.coords[label - 1]

    def __str__(self) -> str:
        return format_point(self.coords)

    def check_length(self, n: int) -> None:
        if len(self.coords) != n:
            raise DomainError(f"point has {len(self.coords)} coordinates, expected {n}")

    def block_sum(self, labels) -> Fraction:
        return sum((self.coords[i - 1] for i in labels), Fraction(0))

    def block_product(self, labels) -> Fraction:
        return prod((self.coords[i - 1] for i in labels), start=Fraction(1))


@dataclass(frozen=True)
class GenericityPolicy:
    """How points are drawn and screened.

    Numerators are uniform in [-B, B] minus zero, denominators in
    [1, max_denominator].  ``lattice_fraction`` of the indicator trials use
    small integer sum-zero points instead (coordinates in
    [-lattice_bound, lattice_bound]); those sit on walls of the
    arrangement and skip the subset-sum screen, which only suits identities
    that hold everywhere, not just generically.
    """

    numerator_bound: int = 10_000
    max_denominator: int = 100
    max_retries: int = 1000
    seed: int = 0
    lattice_fraction: float = 0.0
    lattice_bound: int = 3

    def __post_init__(self):
        if self.numerator_bound < 1 or self.max_denominator < 1:
            raise DomainError("numerator and denominator bounds must be positive")
        if self.max_retries < 1:
            raise DomainError("max_retries must be positive")
        if not 0.0 <= self.lattice_fraction <= 1.0:
            raise DomainError("lattice_fraction must lie in [0, 1]")

    def rng(self, trial: int) -> random.Random:
        return random.Random(f"{self.seed}:{trial}")


def _draw(rng: random.Random, policy: GenericityPolicy) -> Fraction:
    b = policy.numerator_bound
    num = rng.randint(1, b) * rng.choice((-1, 1))
    return Fraction(num, rng.randint(1, policy.max_denominator))


def _subset_values(coords: Sequence[Fraction], op, unit) -> list[Fraction]:
    """Value of ``op`` over every subset, indexed by bitmask."""
    values = [unit]
    for c in coords:
        values += [op(v, c) for v in values]
    return values


def has_vanishing_subset_sum(coords: Sequence[Fraction]) -> bool:
    n = len(coords)
    full = (1 << n) - 1
    sums = _subset_values(coords, lambda a, b: a + b, Fraction(0))
    return any(sums[m] == 0 for m in range(1, full))


def has_unit_subset_product(coords: Sequence[Fraction]) -> bool:
    n = len(coords)
    full = (1 << n) - 1
    prods = _subset_values(coords, lambda a, b: a * b, Fraction(1))
    return any(prods[m] == 1 for m in range(1, full))


def has_repeated_or_zero(coords: Sequence[Fraction]) -> bool:
    return 0 in coords or len(set(coords)) != len(coords)


def is_generic(point: RationalPoint, oracle: Oracle | str) -> bool:
    oracle = Oracle.parse(oracle)
    if oracle is Oracle.indicator:
        return not has_vanishing_subset_sum(point.coords)
    if oracle is Oracle.P:
        return not has_unit_subset_product(point.coords)
    return not has_repeated_or_zero(point.coords)


def uses_lattice(policy: GenericityPolicy, trial: int) -> bool:
    if policy.lattice_fraction <= 0:
        return False
    return random.Random(f"{policy.seed}:{trial}:lattice").random() < policy.lattice_fraction


@lru_cache(maxsize=4096)
def sample_generic_point(n: int, oracle: Oracle | str, policy: GenericityPolicy = GenericityPolicy(), trial: int = 0) -> RationalPoint:
    """Deterministic point for ``(policy.seed, trial)`` meeting the oracle's genericity screen."""
    oracle = Oracle.parse(oracle)
    if n < 1:
        raise DomainError("n must be positive")
    rng = policy.rng(trial)
    lattice = oracle is Oracle.indicator and uses_lattice(policy, trial)
    for _ in range(policy.max_retries):
        if lattice:
            head = [Fraction(rng.randint(-policy.lattice_bound, policy.lattice_bound)) for _ in range(n - 1)]
            return RationalPoint(tuple(head) + (-sum(head, Fraction(0)),), Mode.additive)
        head = [_draw(rng, policy) for _ in range(n - 1)]
        if oracle is Oracle.indicator:
            coords = tuple(head) + (-sum(head, Fraction(0)),)
        elif oracle is Oracle.P:
            coords = tuple(head) + (1 / prod(head, start=Fraction(1)),)
        else:
            coords = tuple(head) + (_draw(rng, policy),)
        point = RationalPoint(coords, oracle.mode)
        if is_generic(point, oracle):
            return point
    raise SamplingError(f"no generic {oracle.value} point for n={n} after {policy.max_retries} draws")
