"""Sparse rational combinations of plate labels."""
from __future__ import annotations

import json
from enum import Enum
from fractions import Fraction
from typing import Iterable, Iterator, Mapping, Union

from ..combinatorics import CompositeSetPartition, OrderedSetPartition, composite_key, label_key
from ..errors import DomainError
from ..grammar import format_csp, format_osp, format_rational, parse_csp, parse_osp, parse_rational


class Space(str, Enum):
    hatP = "hatP"
    P = "P"
    hatP1 = "hatP1"
    P1 = "P1"

    @classmethod
    def parse(cls, text: "str | Space") -> "Space":
        if isinstance(text, Space):
            return text
        try:
            return cls(text)
        except ValueError:
            raise DomainError(f"unknown space {text!r}; expected one of hatP, P, hatP1, P1") from None


class Basis(str, Enum):
    plate = "plate"
    canonical = "canonical"
    dual_face = "dual_face"


Label = Union[OrderedSetPartition, CompositeSetPartition]


def kept_in(space: Space, csp: CompositeSetPartition) -> bool:
    """Whether a canonical (standard composite) label survives in ``space``."""
    space = Space.parse(space)
    if space in (Space.P, Space.P1) and len(csp.factors) > 1:
        return False
    if space in (Space.hatP1, Space.P1) and not csp.all_singleton_blocks:
        return False
    return True


class PlateVector:
    """Immutable formal combination ``sum c_L [L]`` over one basis of one ground set {1..n}."""

    __slots__ = ("n", "basis", "_terms")

    def __init__(self, n: int, basis: Basis | str, terms: Mapping[Label, Fraction | int] | Iterable = ()):
        self.n = int(n)
        self.basis = Basis(basis)
        if self.n < 1:
            raise DomainError("n must be positive")
        items = terms.items() if isinstance(terms, Mapping) else terms
        acc: dict[Label, Fraction] = {}
        for label, coef in items:
            label = self._check_label(label)
            acc[label] = acc.get(label, Fraction(0)) + Fraction(coef)
        self._terms = {k: v for k, v in acc.items() if v != 0}

    def _check_label(self, label: Label) -> Label:
        full = frozenset(range(1, self.n + 1))
        if self.basis is Basis.canonical:
            if isinstance(label, OrderedSetPartition):
                label = CompositeSetPartition((label,))
            if not isinstance(label, CompositeSetPartition):
                raise DomainError(f"canonical labels are composite set partitions, got {label!r}")
            label = label.with_singletons(self.n) if label.ground <= full else label
            if not label.is_standard:
                raise DomainError(f"canonical label {label} is not standard")
        elif not isinstance(label, OrderedSetPartition):
            raise DomainError(f"{self.basis.value} labels are ordered set partitions, got {label!r}")
        if label.ground != full:
            raise DomainError(f"label {label} does not cover 1..{self.n}")
        return label

    # construction helpers

    @classmethod
    def zero(cls, n: int, basis: Basis | str = Basis.plate) -> "PlateVector":
        return cls(n, basis)

    @classmethod
    def unit(cls, label: Label, basis: Basis | str = Basis.plate, n: int | None = None) -> "PlateVector":
        if n is None:
            n = max(label.ground)
        return cls(n, basis, {label: 1})

    # mapping protocol

    @property
    def terms(self) -> dict[Label, Fraction]:
        return dict(self._terms)

    def __getitem__(self, label: Label) -> Fraction:
        if self.basis is Basis.canonical and isinstance(label, CompositeSetPartition):
            label = label.with_singletons(self.n)
        return self._terms.get(label, Fraction(0))

    def __contains__(self, label) -> bool:
        return self[label] != 0

    def __len__(self) -> int:
        return len(self._terms)

    def __bool__(self) -> bool:
        return bool(self._terms)

    def sort_key(self, label: Label):
        return composite_key(label) if self.basis is Basis.canonical else label_key(label)

    def items(self) -> list[tuple[Label, Fraction]]:
        """Terms in lexicographic order of labels."""
        return sorted(self._terms.items(), key=lambda kv: self.sort_key(kv[0]))

    def __iter__(self) -> Iterator[tuple[Label, Fraction]]:
        return iter(self.items())

    # arithmetic

    def _same_space(self, other: "PlateVector") -> None:
        if not isinstance(other, PlateVector):
            raise TypeError(f"cannot combine PlateVector with {type(other).__name__}")
        if other.n != self.n or other.basis is not self.basis:
            raise DomainError(
                f"cannot combine vectors over ({self.n}, {self.basis.value}) and ({other.n}, {other.basis.value})"
            )

    def __add__(self, other: "PlateVector") -> "PlateVector":
        self._same_space(other)
        return PlateVector(self.n, self.basis, list(self._terms.items()) + list(other._terms.items()))

    def __neg__(self) -> "PlateVector":
        return PlateVector(self.n, self.basis, {k: -v for k, v in self._terms.items()})

    def __sub__(self, other: "PlateVector") -> "PlateVector":
        return self + (-other)

    def __mul__(self, scalar) -> "PlateVector":
        if isinstance(scalar, PlateVector):
            return NotImplemented
        s = Fraction(scalar)
        return PlateVector(self.n, self.basis, {k: v * s for k, v in self._terms.items()})

    __rmul__ = __mul__

    def __eq__(self, other) -> bool:
        if not isinstance(other, PlateVector):
            return NotImplemented
        return self.n == other.n and self.basis is other.basis and self._terms == other._terms

    def __hash__(self):
        return hash((self.n, self.basis, frozenset(self._terms.items())))

    def restrict(self, space: Space | str) -> "PlateVector":
        """Drop canonical labels killed in ``space`` (canonical basis only)."""
        if self.basis is not Basis.canonical:
            raise DomainError("restrict applies to canonical-basis vectors")
        space = Space.parse(space)
        return PlateVector(self.n, self.basis, {k: v for k, v in self._terms.items() if kept_in(space, k)})

    # text and JSON

    def format_label(self, label: Label) -> str:
        if self.basis is Basis.canonical:
            return format_csp(label, drop_trivial=True)
        return format_osp(label)

    def parse_label(self, text: str) -> Label:
        if self.basis is Basis.canonical:
            return parse_csp(text, self.n)
        return parse_osp(text)

    def lines(self) -> list[str]:
        return [f"{format_rational(c)}\t{self.format_label(k)}" for k, c in self.items()]

    def __str__(self) -> str:
        if not self._terms:
            return "0"
        out = []
        for k, c in self.items():
            mark = "*" if self.basis is Basis.dual_face else ""
            body = f"[{self.format_label(k)}]{mark}"
            if c == 1:
                out.append(f"+ {body}")
            elif c == -1:
                out.append(f"- {body}")
            else:
                sign = "-" if c < 0 else "+"
                out.append(f"{sign} {format_rational(abs(c))}{body}")
        text = " ".join(out)
        return text[2:] if text.startswith("+ ") else "-" + text[2:]

    def __repr__(self) -> str:
        return f"PlateVector(n={self.n}, basis={self.basis.value}, {self})"

    def to_dict(self) -> dict:
        return {
            "n": self.n,
            "basis": self.basis.value,
            "terms": [{"coef": format_rational(c), "label": self.format_label(k)} for k, c in self.items()],
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict())

    @classmethod
    def from_dict(cls, data: Mapping) -> "PlateVector":
        try:
            n = int(data["n"])
            basis = Basis(data.get("basis", "plate"))
            raw_terms = data["terms"]
        except (KeyError, TypeError, ValueError) as exc:
            raise DomainError(f"malformed plate vector object: {exc}") from None
        empty = cls(n, basis)
        terms = []
        for t in raw_terms:
            try:
                terms.append((empty.parse_label(str(t["label"])), parse_rational(str(t["coef"]))))
            except (KeyError, TypeError) as exc:
                raise DomainError(f"malformed term {t!r}") from exc
        return cls(n, basis, terms)

    @classmethod
    def from_json(cls, text: str) -> "PlateVector":
        try:
            data = json.loads(text)
        except json.JSONDecodeError as exc:
            raise DomainError(f"invalid JSON: {exc}") from None
        return cls.from_dict(data)
