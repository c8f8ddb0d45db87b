"""Randomized exact identity testing.

An identity side is a plate vector, a tree cone, a Weyl chamber, a
convolution product, a pointwise product (``Meet``) or a rational
combination (``Combination``) of those.  Both sides are evaluated at
sampled points with one oracle and compared exactly.
"""
from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction
from functools import singledispatch

from ..combinatorics import CompositeSetPartition, OrderedSetPartition
from ..errors import DomainError, PoleError, SamplingError
from ..plate_algebra.tree import DirectedTree
from ..plate_algebra.vector import Basis, PlateVector
from .indicators import chamber_indicator, dual_face_indicator, minkowski_indicator, plate_indicator, tree_cone_indicator
from .laplace import EVALUATORS, eval_tree_rhs
from .points import GenericityPolicy, Oracle, RationalPoint, sample_generic_point


@dataclass(frozen=True)
class WeylChamber:
    """Partially open chamber: strict at descents of ``sigma``, weak at ascents."""

    sigma: tuple[int, ...]

    def __post_init__(self):
        sigma = tuple(self.sigma)
        if sorted(sigma) != list(range(1, len(sigma) + 1)):
            raise DomainError(f"{sigma} is not a permutation")
        object.__setattr__(self, "sigma", sigma)


@dataclass(frozen=True)
class Plate:
    """A single plate, on its own support."""

    osp: OrderedSetPartition


@dataclass(frozen=True)
class DualFace:
    """A closed dual face: constant on blocks, weakly decreasing across them."""

    osp: OrderedSetPartition


@dataclass(frozen=True)
class Composite:
    """Convolution product of the factors of a composite set partition, evaluated directly."""

    csp: CompositeSetPartition


@dataclass(frozen=True)
class Meet:
    """Pointwise product of characteristic functions (an intersection of sets)."""

    parts: tuple


@dataclass(frozen=True)
class Combination:
    terms: tuple[tuple[Fraction, object], ...]


# ---------------------------------------------------------------------------
# sizes


@singledispatch
def side_size(side) -> int:
    raise DomainError(f"cannot evaluate {type(side).__name__} as an identity side")


@side_size.register
def _(side: PlateVector) -> int:
    return side.n


@side_size.register
def _(side: DirectedTree) -> int:
    return side.n


@side_size.register
def _(side: WeylChamber) -> int:
    return len(side.sigma)


@side_size.register
def _(side: Fraction) -> int:
    return 0


@side_size.register
def _(side: Plate) -> int:
    return max(side.osp.ground)


@side_size.register
def _(side: DualFace) -> int:
    return max(side.osp.ground)


@side_size.register
def _(side: Composite) -> int:
    return max(side.csp.ground)


@side_size.register
def _(side: Meet) -> int:
    return max(side_size(p) for p in side.parts)


@side_size.register
def _(side: Combination) -> int:
    return max((side_size(a) for _, a in side.terms), default=0)


# ---------------------------------------------------------------------------
# evaluation


@singledispatch
def evaluate(side, p: RationalPoint, oracle: Oracle) -> Fraction:
    raise DomainError(f"cannot evaluate {type(side).__name__} as an identity side")


@evaluate.register
def _(side: PlateVector, p: RationalPoint, oracle: Oracle) -> Fraction:
    total = Fraction(0)
    if oracle is Oracle.indicator:
        one = {
            Basis.plate: plate_indicator,
            Basis.canonical: minkowski_indicator,
            Basis.dual_face: dual_face_indicator,
        }[side.basis]
        for label, c in side.terms.items():
            if one(label, p):
                total += c
        return total
    if side.basis is Basis.dual_face:
        raise DomainError("dual-face vectors can only be checked with the indicator oracle")
    f = EVALUATORS[oracle]
    for label, c in side.terms.items():
        total += c * f(label, p)
    return total


@evaluate.register
def _(side: DirectedTree, p: RationalPoint, oracle: Oracle) -> Fraction:
    if oracle is Oracle.indicator:
        return Fraction(tree_cone_indicator(side, p))
    return eval_tree_rhs(side, oracle, p)


@evaluate.register
def _(side: WeylChamber, p: RationalPoint, oracle: Oracle) -> Fraction:
    if oracle is not Oracle.indicator:
        raise DomainError("Weyl chambers can only be checked with the indicator oracle")
    return Fraction(chamber_indicator(side.sigma, p))


@evaluate.register
def _(side: Fraction, p: RationalPoint, oracle: Oracle) -> Fraction:
    return side


@evaluate.register
def _(side: Plate, p: RationalPoint, oracle: Oracle) -> Fraction:
    if oracle is Oracle.indicator:
        return Fraction(plate_indicator(side.osp, p))
    return EVALUATORS[oracle](side.osp, p)


@evaluate.register
def _(side: DualFace, p: RationalPoint, oracle: Oracle) -> Fraction:
    if oracle is not Oracle.indicator:
        raise DomainError("dual faces can only be checked with the indicator oracle")
    return Fraction(dual_face_indicator(side.osp, p))


@evaluate.register
def _(side: Composite, p: RationalPoint, oracle: Oracle) -> Fraction:
    csp = side.csp.with_singletons(len(p))
    if oracle is Oracle.indicator:
        return Fraction(minkowski_indicator(csp, p))
    return EVALUATORS[oracle](csp, p)


@evaluate.register
def _(side: Meet, p: RationalPoint, oracle: Oracle) -> Fraction:
    if oracle is not Oracle.indicator:
        raise DomainError("pointwise products are only meaningful for the indicator oracle")
    value = Fraction(1)
    for part in side.parts:
        value *= evaluate(part, p, oracle)
    return value


@evaluate.register
def _(side: Combination, p: RationalPoint, oracle: Oracle) -> Fraction:
    return sum((c * evaluate(a, p, oracle) for c, a in side.terms), Fraction(0))


# ---------------------------------------------------------------------------
# reports


@dataclass
class VerificationReport:
    oracle: str
    seed: int
    trials: int = 0
    passed: int = 0
    rejected: int = 0
    failed_point: str | None = None
    failed_values: tuple[str, str] | None = None

    @property
    def ok(self) -> bool:
        return self.trials > 0 and self.passed == self.trials

    def to_dict(self) -> dict:
        out = {"trials": self.trials, "passed": self.passed, "oracle": self.oracle, "seed": self.seed}
        if self.failed_point is not None:
            out["failed_point"] = self.failed_point
            out["failed_lhs"], out["failed_rhs"] = self.failed_values
        out["rejected"] = self.rejected
        return out

    def to_json(self) -> str:
        return json.dumps(self.to_dict())

    def __str__(self) -> str:
        status = "PASS" if self.ok else "FAIL"
        text = f"{status} {self.passed}/{self.trials} oracle={self.oracle} seed={self.seed}"
        if self.failed_point is not None:
            text += f" counterexample={self.failed_point} lhs={self.failed_values[0]} rhs={self.failed_values[1]}"
        return text


def verify_identity(
    lhs,
    rhs,
    oracle: Oracle | str = Oracle.indicator,
    policy: GenericityPolicy = GenericityPolicy(),
    trials: int = 20,
    n: int | None = None,
) -> VerificationReport:
    """Compare both sides at ``trials`` screened points; pole hits are resampled."""
    oracle = Oracle.parse(oracle)
    if trials < 1:
        raise DomainError("trials must be positive")
    sizes = {side_size(lhs), side_size(rhs)}
    if n is None:
        n = max(sizes)
    elif max(sizes) > n:
        raise DomainError(f"identity mentions label {max(sizes)} but n={n}")
    for side in (lhs, rhs):
        if isinstance(side, PlateVector) and side.n != n:
            raise DomainError(f"plate vector over n={side.n} compared at n={n}")
    report = VerificationReport(oracle=oracle.value, seed=policy.seed)
    index = 0
    while report.trials < trials:
        if report.rejected >= policy.max_retries:
            raise SamplingError(f"{report.rejected} sampled points hit poles; giving up")
        p = sample_generic_point(n, oracle, policy, index)
        index += 1
        try:
            a = evaluate(lhs, p, oracle)
            b = evaluate(rhs, p, oracle)
        except PoleError:
            report.rejected += 1
            continue
        report.trials += 1
        if a == b:
            report.passed += 1
        elif report.failed_point is None:
            report.failed_point = str(p)
            report.failed_values = (str(a), str(b))
    return report


def combination(*terms: tuple[Fraction | int, object] | object) -> Combination:
    """``combination(a, (-1, b))`` builds a - b."""
    out = []
    for t in terms:
        if isinstance(t, tuple) and len(t) == 2 and isinstance(t[0], (int, Fraction)):
            out.append((Fraction(t[0]), t[1]))
        else:
            out.append((Fraction(1), t))
    return Combination(tuple(out))
