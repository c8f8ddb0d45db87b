"""Pointwise characteristic functions of plates, dual faces, composites and tree cones."""
from __future__ import annotations

from fractions import Fraction
from typing import Sequence

from ..combinatorics import CompositeSetPartition, OrderedSetPartition
from ..errors import DomainError
from ..plate_algebra.tree import DirectedTree
from .points import Mode, RationalPoint


def _additive(p: RationalPoint, n: int | None = None) -> None:
    if p.mode is not Mode.additive:
        raise DomainError("indicator evaluation needs an additive (sum-zero) point")
    if n is not None:
        p.check_length(n)


def _covers(labels, p: RationalPoint) -> None:
    if labels and max(labels) > len(p):
        raise DomainError(f"label {max(labels)} exceeds point length {len(p)}")


def plate_indicator(osp: OrderedSetPartition, p: RationalPoint) -> int:
    """1 when every prefix block sum is nonnegative, the total vanishes and p is zero off the support."""
    _additive(p)
    _covers(osp.ground, p)
    off = [i for i in range(1, len(p) + 1) if i not in osp.ground]
    if any(p[i] != 0 for i in off):
        return 0
    running = Fraction(0)
    for block in osp.blocks:
        running += p.block_sum(block)
        if running < 0:
            return 0
    return int(running == 0)


def dual_face_indicator(osp: OrderedSetPartition, p: RationalPoint, strict: Sequence[bool] | bool = False) -> int:
    """1 when p is constant on each block and the block values decrease left to right.

    ``strict`` gives one flag per consecutive pair of blocks (or one flag
    for all of them).
    """
    _additive(p)
    _covers(osp.ground, p)
    if len(osp.ground) != len(p):
        raise DomainError("dual faces need a label covering every coordinate")
    k = len(osp)
    flags = [strict] * (k - 1) if isinstance(strict, bool) else list(strict)
    if len(flags) != k - 1:
        raise DomainError(f"expected {k - 1} strictness flags, got {len(flags)}")
    values = []
    for block in osp.blocks:
        v = p[block[0]]
        if any(p[i] != v for i in block):
            return 0
        values.append(v)
    for a, b, s in zip(values, values[1:], flags):
        if a < b or (s and a == b):
            return 0
    return 1


def minkowski_indicator(csp: CompositeSetPartition, p: RationalPoint) -> int:
    """Indicator of the sum of factor plates living in orthogonal coordinate subspaces."""
    _additive(p)
    _covers(csp.ground, p)
    if any(p[i] != 0 for i in range(1, len(p) + 1) if i not in csp.ground):
        return 0
    for f in csp.factors:
        running = Fraction(0)
        for block in f.blocks:
            running += p.block_sum(block)
            if running < 0:
                return 0
        if running != 0:
            return 0
    return 1


def chamber_indicator(sigma: Sequence[int], p: RationalPoint) -> int:
    """Partially open Weyl chamber: x decreases along sigma, strictly at descents."""
    _additive(p, len(sigma))
    for a, b in zip(sigma, sigma[1:]):
        if p[a] < p[b] or (a > b and p[a] == p[b]):
            return 0
    return 1


def tree_dual_basis(tree: DirectedTree) -> list[frozenset[int]]:
    """For each edge (i, j), the labels on i's side once that edge is removed."""
    out = []
    for a in range(len(tree.edges)):
        tail, _ = tree.components_without(a)
        out.append(frozenset(i for v in tail for i in v))
    return out


def tree_cone_indicator(tree: DirectedTree, p: RationalPoint) -> int:
    """Membership in the cone spanned by the edge roots (plus within-block directions)."""
    _additive(p, tree.n)
    return int(all(p.block_sum(I) >= 0 for I in tree_dual_basis(tree)))
