"""Text form of identity sides, as accepted by ``plates verify``.

    expr  := [sign] term (sign term)*
    term  := rational ["*"] atom | rational | atom
    atom  := "[" osp "]"                 single plate
           | "[" csp "]"                 convolution product (factors joined by "*")
           | "dual[" osp "]"             closed dual face
           | "tree(" edges ")"           tree cone
           | "chamber(" i,j,... ")"      partially open Weyl chamber
           | "meet(" expr (";" expr)* ")" pointwise product

A whole side may instead be a plate vector in JSON form.
"""
from __future__ import annotations

from fractions import Fraction

from ..errors import ParseError
from ..grammar import _Scanner, _read_rational, parse_csp, parse_osp
from ..plate_algebra.tree import DirectedTree
from ..plate_algebra.vector import PlateVector
from .verify import Combination, Composite, DualFace, Meet, Plate, WeylChamber


def parse_side(text: str):
    if text.lstrip().startswith("{"):
        return PlateVector.from_json(text)
    sc = _Scanner(text)
    expr = _read_expr(sc)
    sc.finish()
    return expr


def _read_expr(sc: _Scanner) -> Combination:
    terms = []
    sign = Fraction(1)
    if sc.accept("-"):
        sign = Fraction(-1)
    else:
        sc.accept("+")
    while True:
        coef, atom = _read_term(sc)
        terms.append((sign * coef, atom))
        if sc.accept("+"):
            sign = Fraction(1)
        elif sc.accept("-"):
            sign = Fraction(-1)
        else:
            return Combination(tuple(terms))


def _read_term(sc: _Scanner):
    ch = sc.peek()
    if ch.isdigit():
        coef = _read_rational(sc)
        sc.accept("*")
        if _starts_atom(sc):
            return coef, _read_atom(sc)
        return Fraction(1), coef
    return Fraction(1), _read_atom(sc)


def _starts_atom(sc: _Scanner) -> bool:
    ch = sc.peek()
    return ch == "[" or ch.isalpha()


def _enclosed(sc: _Scanner, open_: str, close: str) -> tuple[str, int]:
    sc.expect(open_)
    start = sc.i
    depth = 1
    while sc.i < len(sc.text):
        ch = sc.text[sc.i]
        if ch == open_:
            depth += 1
        elif ch == close:
            depth -= 1
            if depth == 0:
                body = sc.text[start:sc.i]
                sc.i += 1
                return body, start
        sc.i += 1
    raise sc.fail(f"missing {close!r}", start)


def _sub(parse, body: str, offset: int, whole: str):
    try:
        return parse(body)
    except ParseError as exc:
        raise ParseError(whole, offset + exc.position, exc.reason) from None


def _read_atom(sc: _Scanner):
    sc.skip()
    at = sc.i
    if sc.peek() == "[":
        body, start = _enclosed(sc, "[", "]")
        if "*" in body:
            return Composite(_sub(parse_csp, body, start, sc.text))
        return Plate(_sub(parse_osp, body, start, sc.text))
    word_start = sc.i
    while sc.i < len(sc.text) and sc.text[sc.i].isalpha():
        sc.i += 1
    word = sc.text[word_start:sc.i]
    if word == "dual":
        body, start = _enclosed(sc, "[", "]")
        return DualFace(_sub(parse_osp, body, start, sc.text))
    if word == "tree":
        body, start = _enclosed(sc, "(", ")")
        return _sub(DirectedTree.parse, body, start, sc.text)
    if word == "chamber":
        body, start = _enclosed(sc, "(", ")")
        return WeylChamber(_chamber_order(body, start, sc.text))
    if word == "meet":
        sc.expect("(")
        parts = [_read_expr(sc)]
        while sc.accept(";"):
            parts.append(_read_expr(sc))
        sc.expect(")")
        return Meet(tuple(parts))
    raise sc.fail(f"unknown atom {word or sc.peek()!r}", at)


def _chamber_order(body: str, offset: int, whole: str) -> tuple[int, ...]:
    sc = _Scanner(body)
    order = [sc.label()[0]]
    while sc.accept(","):
        order.append(sc.label()[0])
    if not sc.at_end():
        raise ParseError(whole, offset + sc.i, f"unexpected {sc.peek()!r}")
    if sorted(order) != list(range(1, len(order) + 1)):
        raise ParseError(whole, offset, "chamber needs a permutation of 1..n")
    return tuple(order)
