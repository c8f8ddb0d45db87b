"""Text grammar for labels, trees and points.

    osp   := block ("|" block)*          block := int ("," int)*
    csp   := osp ("*" osp)*
    tree  := edge ("," edge)*            edge  := vertex ">" vertex
    vertex:= int | "{" int ("," int)* "}"
    point := rational ("," rational)*    rational := ["-"|"+"] digits ["/" digits]

Whitespace is ignored everywhere.  Errors carry the character offset in the
original text.
"""
from __future__ import annotations

from fractions import Fraction
from typing import Iterable, Sequence

from .combinatorics import CompositeSetPartition, OrderedSetPartition
from .errors import DomainError, ParseError


class _Scanner:
    def __init__(self, text: str):
        self.text = text
        self.i = 0

    def skip(self) -> None:
        while self.i < len(self.text) and self.text[self.i].isspace():
            self.i += 1

    def peek(self) -> str:
        self.skip()
        return self.text[self.i] if self.i < len(self.text) else ""

    def at_end(self) -> bool:
        return self.peek() == ""

    def fail(self, reason: str, at: int | None = None) -> ParseError:
        return ParseError(self.text, self.i if at is None else at, reason)

    def expect(self, ch: str) -> None:
        if self.peek() != ch:
            got = self.peek() or "end of input"
            raise self.fail(f"expected {ch!r}, got {got!r}")
        self.i += 1

    def accept(self, ch: str) -> bool:
        if self.peek() == ch:
            self.i += 1
            return True
        return False

    def digits(self) -> str:
        self.skip()
        start = self.i
        while self.i < len(self.text) and self.text[self.i].isdigit():
            self.i += 1
        if start == self.i:
            got = self.text[start] if start < len(self.text) else "end of input"
            raise self.fail(f"expected a number, got {got!r}", start)
        return self.text[start:self.i]

    def label(self) -> tuple[int, int]:
        self.skip()
        at = self.i
        value = int(self.digits())
        if value < 1:
            raise self.fail("labels must be positive", at)
        return value, at

    def finish(self) -> None:
        if not self.at_end():
            raise self.fail(f"unexpected {self.peek()!r}")


def _read_osp(sc: _Scanner, seen: dict[int, int]) -> OrderedSetPartition:
    blocks = []
    while True:
        block = []
        while True:
            value, at = sc.label()
            if value in seen:
                raise sc.fail(f"repeated label {value}", at)
            seen[value] = at
            block.append(value)
            if not sc.accept(","):
                break
        blocks.append(tuple(block))
        if not sc.accept("|"):
            break
    return OrderedSetPartition(tuple(blocks))


def parse_osp(text: str) -> OrderedSetPartition:
    sc = _Scanner(text)
    osp = _read_osp(sc, {})
    sc.finish()
    return osp


def parse_csp(text: str, n: int | None = None) -> CompositeSetPartition:
    """Parse factors joined by ``*``; with ``n`` given, missing labels become trivial factors."""
    sc = _Scanner(text)
    seen: dict[int, int] = {}
    factors = [_read_osp(sc, seen)]
    while sc.accept("*"):
        factors.append(_read_osp(sc, seen))
    sc.finish()
    csp = CompositeSetPartition(tuple(factors))
    if n is not None:
        if max(csp.ground) > n:
            raise ParseError(text, 0, f"label {max(csp.ground)} exceeds n={n}")
        csp = csp.with_singletons(n)
    return csp


def format_osp(osp: OrderedSetPartition) -> str:
    return "|".join(",".join(map(str, b)) for b in osp.blocks)


def format_csp(csp: CompositeSetPartition, drop_trivial: bool = False) -> str:
    """Join factors with ``*``; ``drop_trivial`` omits singleton factors unless nothing else is left."""
    factors = csp.factors
    if drop_trivial and any(not f.is_trivial for f in factors):
        factors = tuple(f for f in factors if not f.is_trivial)
    return "*".join(format_osp(f) for f in factors)


def _read_vertex(sc: _Scanner) -> tuple[tuple[int, ...], int]:
    sc.skip()
    at = sc.i
    if sc.accept("{"):
        labels = [sc.label()[0]]
        while sc.accept(","):
            labels.append(sc.label()[0])
        sc.expect("}")
        if len(set(labels)) != len(labels):
            raise sc.fail("repeated label inside a vertex block", at)
        return tuple(sorted(labels)), at
    return (sc.label()[0],), at


def parse_tree_edges(text: str) -> list[tuple[tuple[int, ...], tuple[int, ...]]]:
    """Edge list with vertex blocks; structural validation is left to the tree type."""
    sc = _Scanner(text)
    edges = []
    while True:
        a, at = _read_vertex(sc)
        sc.expect(">")
        b, _ = _read_vertex(sc)
        if a == b:
            raise sc.fail("loop edge", at)
        edges.append((a, b))
        if not sc.accept(","):
            break
    sc.finish()
    return edges


def parse_rational(text: str) -> Fraction:
    sc = _Scanner(text)
    value = _read_rational(sc)
    sc.finish()
    return value


def _read_rational(sc: _Scanner) -> Fraction:
    sign = 1
    if sc.accept("-"):
        sign = -1
    else:
        sc.accept("+")
    num = int(sc.digits())
    den = 1
    if sc.accept("/"):
        at = sc.i
        den = int(sc.digits())
        if den == 0:
            raise sc.fail("zero denominator", at)
    return sign * Fraction(num, den)


def parse_point(text: str) -> tuple[Fraction, ...]:
    sc = _Scanner(text)
    coords = [_read_rational(sc)]
    while sc.accept(","):
        coords.append(_read_rational(sc))
    sc.finish()
    return tuple(coords)


def format_rational(q: Fraction | int) -> str:
    q = Fraction(q)
    return str(q.numerator) if q.denominator == 1 else f"{q.numerator}/{q.denominator}"


def format_point(coords: Iterable[Fraction]) -> str:
    return ",".join(format_rational(c) for c in coords)


def format_vertex(block: Sequence[int]) -> str:
    return str(block[0]) if len(block) == 1 else "{" + ",".join(map(str, block)) + "}"


def format_tree_edges(edges: Iterable[tuple[Sequence[int], Sequence[int]]]) -> str:
    return ",".join(f"{format_vertex(a)}>{format_vertex(b)}" for a, b in edges)


def require_full(osp: OrderedSetPartition, text: str = "") -> int:
    n = len(osp.ground)
    if not osp.is_full(n):
        raise DomainError(f"labels of {text or osp} must be exactly 1..{n}")
    return n
