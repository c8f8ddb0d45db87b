"""Straightening plates into the canonical bases of the four spaces.

hatP coordinates come from back-substitution against the unitriangular
change of basis.  The closed forms for P, P1 and hatP1 and the general
pivot expansion are computed directly from the label and are checked
against that route in the tests.
"""
from __future__ import annotations

import heapq
from fractions import Fraction
from itertools import product
from typing import Iterator

from ..combinatorics import (
    CompositeSetPartition,
    OrderedSetPartition,
    ordered_lumpings,
    standard_decomposition,
)
from ..errors import DomainError
from .expansion import canonical_column, lex_rank
from .vector import Basis, PlateVector, Space, kept_in

Terms = dict[CompositeSetPartition, Fraction]


def _sign(k: int) -> int:
    return -1 if k % 2 else 1


# ---------------------------------------------------------------------------
# hatP by back-substitution


def straighten_hatP(v: PlateVector) -> PlateVector:
    """Canonical coordinates of a plate-basis vector.

    The largest remaining plate in lexicographic order is the leading term
    of exactly one canonical element, so peeling it off never revisits a
    label.
    """
    if v.basis is not Basis.plate:
        raise DomainError("back-substitution expects a plate-basis vector")
    work: dict[OrderedSetPartition, Fraction] = dict(v.terms)
    heap = [(-lex_rank(p), p) for p in work]
    heapq.heapify(heap)
    out: Terms = {}
    while heap:
        _, top = heapq.heappop(heap)
        c = work.pop(top, 0)
        if c == 0:
            continue
        out[standard_decomposition(top)] = c
        for pi, sign in canonical_column(top):
            if pi == top:
                continue
            if pi not in work:
                heapq.heappush(heap, (-lex_rank(pi), pi))
            work[pi] = work.get(pi, 0) - c * sign
    return PlateVector(v.n, Basis.canonical, out)


def project(v: PlateVector, space: Space | str) -> PlateVector:
    """Image of ``v`` in ``space``: straighten in hatP, then drop killed canonical labels."""
    space = Space.parse(space)
    if v.basis is Basis.plate:
        v = straighten_hatP(v)
    elif v.basis is not Basis.canonical:
        raise DomainError("dual-face vectors have no canonical projection")
    return v.restrict(space)


# ---------------------------------------------------------------------------
# pivot bookkeeping


def _pivot_layout(osp: OrderedSetPartition, pivot: int | None):
    """Split ``osp`` into the descending chain S_1..S_l and the tail S_{l+1}..S_k."""
    k = len(osp)
    if pivot is None:
        low = min(osp.ground)
        pivot = osp.position[low]
    if not isinstance(pivot, int) or not 1 <= pivot <= k:
        raise DomainError(f"pivot must be a block index in 1..{k}, got {pivot!r}")
    chain = [osp.blocks[pivot - 1 - i] for i in range(pivot)]
    tail = list(osp.blocks[pivot:])
    return pivot, chain, tail


def _full(n: int, factors) -> CompositeSetPartition:
    return CompositeSetPartition(tuple(factors)).with_singletons(n)


# ---------------------------------------------------------------------------
# P


def _straighten_P_label(osp: OrderedSetPartition) -> Iterator[tuple[OrderedSetPartition, int]]:
    l, chain, tail = _pivot_layout(osp, None)
    k = len(osp)
    atoms = chain + tail
    weak = [(i, i + 1) for i in range(l - 1)]
    order = [0] + list(range(l, k))
    strict = list(zip(order, order[1:]))
    for pi in ordered_lumpings(atoms, strict, weak):
        yield pi, _sign(k - l - 1 - len(pi))


# ---------------------------------------------------------------------------
# P1


def _straighten_P1_label(osp: OrderedSetPartition) -> Iterator[tuple[OrderedSetPartition, int]]:
    if not osp.is_permutation:
        return
    l, chain, tail = _pivot_layout(osp, None)
    atoms = chain + tail
    k = len(atoms)
    strict = [(i, i + 1) for i in range(l - 1)]
    order = [0] + list(range(l, k))
    strict += list(zip(order, order[1:]))
    for pi in ordered_lumpings(atoms, strict):
        if len(pi) == k:
            yield pi, _sign(l - 1)


# ---------------------------------------------------------------------------
# hatP1


def _product(left: Terms, right: Terms) -> Terms:
    out: Terms = {}
    for a, ca in left.items():
        for b, cb in right.items():
            key = a.times(b)
            out[key] = out.get(key, 0) + ca * cb
    return {k: v for k, v in out.items() if v}


def _hatP1_terms(osp: OrderedSetPartition) -> Terms:
    """hatP1 coordinates of a permutation label on its own support.

    The chain is cut into consecutive runs (sign -1 per uncut step); the
    run through the pivot is shuffled with the tail, the other runs are
    standardized recursively.
    """
    if not osp.is_permutation:
        return {}
    if osp.is_standard:
        return {CompositeSetPartition((osp,)): Fraction(1)}
    l, chain, tail = _pivot_layout(osp, None)
    out: Terms = {}
    for cuts in product((False, True), repeat=l - 1):
        runs = [[chain[0]]]
        for i, cut in enumerate(cuts):
            if cut:
                runs.append([chain[i + 1]])
            else:
                runs[-1].append(chain[i + 1])
        sign = _sign(cuts.count(False))
        head = runs[0]
        atoms = head + tail
        t = len(head)
        strict = [(i, i + 1) for i in range(t - 1)]
        order = [0] + list(range(t, len(atoms)))
        strict += list(zip(order, order[1:]))
        shuffles = {
            CompositeSetPartition((pi,)): Fraction(1)
            for pi in ordered_lumpings(atoms, strict)
            if len(pi) == len(atoms)
        }
        acc: Terms = {k: v * sign for k, v in shuffles.items()}
        for run in runs[1:]:
            acc = _product(acc, _hatP1_terms(OrderedSetPartition(tuple(run))))
        for key, c in acc.items():
            out[key] = out.get(key, 0) + c
    return {k: v for k, v in out.items() if v}


# ---------------------------------------------------------------------------
# the general pivot expansion


def theorem_terms(osp: OrderedSetPartition, pivot: int | None = None) -> list[tuple[int, tuple[OrderedSetPartition, ...]]]:
    """Raw signed terms of the pivot expansion, before any restandardization.

    Each consecutive pair of the chain S_1..S_l is lumped, sequenced in one
    factor (sign -1) or split into separate factors.  The factor through S_1
    is shuffle-lumped with the tail, keeping its first block in front.
    """
    l, chain, tail = _pivot_layout(osp, pivot)
    k = len(osp)
    out = []
    for word in product((1, 2, 3), repeat=l - 1):
        factors = [[list(chain[0])]]
        for i, choice in enumerate(word):
            nxt = list(chain[i + 1])
            if choice == 1:
                factors[-1][-1].extend(nxt)
            elif choice == 2:
                factors[-1].append(nxt)
            else:
                factors.append([nxt])
        c = word.count(2)
        head = factors[0]
        t = len(head)
        atoms = head + tail
        strict = [(i, i + 1) for i in range(t - 1)]
        order = [0] + list(range(t, len(atoms)))
        strict += list(zip(order, order[1:]))
        others = tuple(OrderedSetPartition(tuple(map(tuple, f))) for f in factors[1:])
        for pi in ordered_lumpings(atoms, strict):
            sign = _sign(c + t + (k - l) - len(pi))
            out.append((sign, (pi,) + others))
    return out


def _theorem_canonical(osp: OrderedSetPartition, pivot: int | None = None) -> Terms:
    if pivot is None and osp.is_standard:
        return {CompositeSetPartition((osp,)): Fraction(1)}
    out: Terms = {}
    for sign, factors in theorem_terms(osp, pivot):
        acc: dict = {None: Fraction(sign)}
        for f in factors:
            acc = _times_factor(acc, f)
        for key, c in acc.items():
            out[key] = out.get(key, 0) + c
    return {k: v for k, v in out.items() if v}


def _times_factor(acc: dict, factor: OrderedSetPartition) -> dict:
    expansion = _theorem_canonical(factor)
    out: dict = {}
    for a, ca in acc.items():
        for b, cb in expansion.items():
            key = b if a is None else a.times(b)
            out[key] = out.get(key, 0) + ca * cb
    return {k: v for k, v in out.items() if v}


def straighten_theorem_form(osp: OrderedSetPartition, pivot: int | None = None) -> PlateVector:
    """hatP coordinates of a plate from the pivot expansion, restandardizing factors recursively.

    ``pivot`` is the 1-based index of the block S_1; it defaults to the block
    holding the smallest label.
    """
    n = len(osp.ground)
    if not osp.is_full(n):
        raise DomainError(f"labels of {osp} must be exactly 1..{n}")
    terms = _theorem_canonical(osp, pivot)
    return PlateVector(n, Basis.canonical, {_full(n, k.factors): c for k, c in terms.items()})


# ---------------------------------------------------------------------------
# front door


def straighten(v: PlateVector, space: Space | str) -> PlateVector:
    """Coordinates of a plate-basis vector in the canonical basis of ``space``."""
    space = Space.parse(space)
    if v.basis is Basis.canonical:
        return v.restrict(space)
    if v.basis is not Basis.plate:
        raise DomainError("only plate- or canonical-basis vectors can be straightened")
    if space is Space.hatP:
        return straighten_hatP(v)
    n = v.n
    out: dict[CompositeSetPartition, Fraction] = {}

    def add(key: CompositeSetPartition, c) -> None:
        out[key] = out.get(key, 0) + c

    for osp, coef in v.items():
        if space is Space.P:
            for pi, s in _straighten_P_label(osp):
                add(CompositeSetPartition((pi,)), coef * s)
        elif space is Space.P1:
            for pi, s in _straighten_P1_label(osp):
                add(CompositeSetPartition((pi,)), coef * s)
        else:
            for key, c in _hatP1_terms(osp).items():
                add(_full(n, key.factors), coef * c)
    result = PlateVector(n, Basis.canonical, out)
    bad = [k for k in result.terms if not kept_in(space, k)]
    if bad:
        raise AssertionError(f"closed form produced labels outside the {space.value} basis: {bad[:3]}")
    return result
