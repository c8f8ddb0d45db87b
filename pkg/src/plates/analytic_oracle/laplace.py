"""Closed-form Laplace-transform values of plates, composites and tree cones."""
from __future__ import annotations

from fractions import Fraction
from math import prod

from ..combinatorics import CompositeSetPartition, OrderedSetPartition
from ..errors import DomainError, PoleError
from ..plate_algebra.tree import DirectedTree
from .indicators import tree_dual_basis
from .points import Mode, Oracle, RationalPoint


def _inv(value: Fraction, what: str) -> Fraction:
    if value == 0:
        raise PoleError(f"pole: {what} vanishes")
    return 1 / value


def _full_label(label, p: RationalPoint) -> None:
    ground = label.ground
    if ground != frozenset(range(1, len(p) + 1)):
        raise DomainError(f"label {label} does not cover the {len(p)} coordinates of the point")


def eval_P(label: OrderedSetPartition | CompositeSetPartition, p: RationalPoint) -> Fraction:
    """prod over proper prefixes of 1/(1 - x_prefix) on the torus x_1...x_n = 1.

    Composites with more than one factor are lower dimensional and map to 0.
    """
    if p.mode is not Mode.multiplicative:
        raise DomainError("type-P evaluation needs a multiplicative point (product one)")
    _full_label(label, p)
    if isinstance(label, CompositeSetPartition):
        if len(label.factors) > 1:
            return Fraction(0)
        label = label.factors[0]
    value = Fraction(1)
    running = Fraction(1)
    for block in label.blocks[:-1]:
        running *= p.block_product(block)
        value *= _inv(1 - running, f"1 - x over {block}")
    return value


def _nonzero(p: RationalPoint) -> None:
    if any(c == 0 for c in p.coords):
        raise DomainError("hatP1 evaluation needs nonzero coordinates")


def _hatP1_permutation(osp: OrderedSetPartition, p: RationalPoint) -> Fraction:
    order = [b[0] for b in osp.blocks]
    value = Fraction(1)
    for a, b in zip(order, order[1:]):
        value *= _inv(1 - p[a] / p[b], f"1 - x{a}/x{b}")
    return value


def eval_hatP1(label: OrderedSetPartition | CompositeSetPartition, p: RationalPoint) -> Fraction:
    """prod 1/(1 - x_{i_k}/x_{i_{k+1}}) along each factor; 0 when some block has two labels."""
    _full_label(label, p)
    _nonzero(p)
    factors = label.factors if isinstance(label, CompositeSetPartition) else (label,)
    if not all(f.is_permutation for f in factors):
        return Fraction(0)
    return prod((_hatP1_permutation(f, p) for f in factors), start=Fraction(1))


def eval_P1(label: OrderedSetPartition | CompositeSetPartition, p: RationalPoint) -> Fraction:
    """prod 1/(y_{i_k} - y_{i_{k+1}}) along a permutation; 0 for lumped or composite labels."""
    _full_label(label, p)
    if isinstance(label, CompositeSetPartition):
        if len(label.factors) > 1:
            return Fraction(0)
        label = label.factors[0]
    if not label.is_permutation:
        return Fraction(0)
    order = [b[0] for b in label.blocks]
    value = Fraction(1)
    for a, b in zip(order, order[1:]):
        value *= _inv(p[a] - p[b], f"y{a} - y{b}")
    return value


EVALUATORS = {Oracle.P: eval_P, Oracle.hatP1: eval_hatP1, Oracle.P1: eval_P1}


def eval_tree_rhs(tree: DirectedTree, rep: Oracle | str, p: RationalPoint) -> Fraction:
    """Closed-form transform of a tree cone.

    P uses the dual basis subsets I_a; hatP1 and P1 use the edges directly.
    Trees on blocks with two or more labels contain lines, so hatP1 and P1
    give 0 there.
    """
    rep = Oracle.parse(rep)
    p.check_length(tree.n)
    if rep is Oracle.indicator:
        raise DomainError("the indicator oracle has no closed form; use tree_cone_indicator")
    if rep is Oracle.P:
        if p.mode is not Mode.multiplicative:
            raise DomainError("type-P evaluation needs a multiplicative point (product one)")
        return prod(
            (_inv(1 - p.block_product(I), f"1 - x over {sorted(I)}") for I in tree_dual_basis(tree)),
            start=Fraction(1),
        )
    if not tree.is_label_tree:
        return Fraction(0)
    value = Fraction(1)
    for (a,), (b,) in tree.edges:
        if rep is Oracle.hatP1:
            if p[b] == 0:
                raise DomainError("hatP1 evaluation needs nonzero coordinates")
            value *= _inv(1 - p[a] / p[b], f"1 - x{a}/x{b}")
        else:
            value *= _inv(p[a] - p[b], f"y{a} - y{b}")
    return value
