"""Hypothesis strategies for labels, trees and points."""
from fractions import Fraction

from hypothesis import strategies as st

from plates.combinatorics import CompositeSetPartition, osp_from_packed_word, standard_osps_of


def _pack(raw):
    values = sorted(set(raw))
    rank = {v: k for k, v in enumerate(values)}
    return tuple(rank[v] for v in raw)


def packed_words(min_n=1, max_n=6):
    return st.lists(st.integers(0, max_n - 1), min_size=min_n, max_size=max_n).map(_pack)


def osps(min_n=1, max_n=6):
    return packed_words(min_n, max_n).map(osp_from_packed_word)


@st.composite
def standard_csps(draw, min_n=1, max_n=6):
    n = draw(st.integers(min_n, max_n))
    colour = draw(st.lists(st.integers(0, n - 1), min_size=n, max_size=n))
    groups = {}
    for label, c in enumerate(colour, start=1):
        groups.setdefault(c, []).append(label)
    factors = []
    for labels in groups.values():
        options = list(standard_osps_of(labels))
        factors.append(draw(st.sampled_from(options)))
    return CompositeSetPartition(tuple(factors))


@st.composite
def trees(draw, min_n=2, max_n=6):
    """Random labeled tree with random edge directions (attach each vertex to an earlier one)."""
    n = draw(st.integers(min_n, max_n))
    order = draw(st.permutations(range(1, n + 1)))
    edges = []
    for k in range(1, n):
        parent = order[draw(st.integers(0, k - 1))]
        child = order[k]
        edges.append((parent, child) if draw(st.booleans()) else (child, parent))
    return n, edges


rationals = st.fractions(min_value=-50, max_value=50, max_denominator=20)


@st.composite
def sum_zero_points(draw, n):
    head = [draw(rationals) for _ in range(n - 1)]
    return tuple(head) + (-sum(head, Fraction(0)),)
