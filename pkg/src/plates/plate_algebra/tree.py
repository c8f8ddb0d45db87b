"""Directed trees on labels or on disjoint label blocks."""
from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from itertools import product
from typing import Iterable, Sequence

from ..combinatorics import OrientationConstraint
from ..errors import DomainError
from ..grammar import format_tree_edges, parse_tree_edges

Block = tuple[int, ...]


@dataclass(frozen=True)
class DirectedTree:
    """Edges ``(i, j)`` between vertex blocks; each edge stands for the root e_i - e_j.

    Plain label trees use singleton blocks.  The vertex blocks must be
    disjoint and cover {1..n}; the undirected skeleton must be a tree.
    """

    edges: tuple[tuple[Block, Block], ...]
    vertices: tuple[Block, ...] = ()

    def __post_init__(self):
        edges = tuple((_block(a), _block(b)) for a, b in self.edges)
        vertices = {_block(v) for v in self.vertices}
        for a, b in edges:
            vertices.update((a, b))
        vertices = tuple(sorted(vertices))
        labels = [i for v in vertices for i in v]
        if len(set(labels)) != len(labels):
            raise DomainError("tree vertex blocks overlap")
        n = len(labels)
        if set(labels) != set(range(1, n + 1)):
            raise DomainError(f"tree vertices must cover 1..{n}")
        if len(edges) != len(vertices) - 1:
            raise DomainError(f"a tree on {len(vertices)} vertices needs {len(vertices) - 1} edges, got {len(edges)}")
        parent = {v: v for v in vertices}

        def find(v):
            while parent[v] != v:
                parent[v] = parent[parent[v]]
                v = parent[v]
            return v

        for a, b in edges:
            if a == b:
                raise DomainError(f"loop edge at {a}")
            ra, rb = find(a), find(b)
            if ra == rb:
                raise DomainError("edge list contains a cycle")
            parent[ra] = rb
        object.__setattr__(self, "edges", edges)
        object.__setattr__(self, "vertices", vertices)

    @classmethod
    def from_pairs(cls, pairs: Iterable[tuple[int, int]], n: int | None = None) -> "DirectedTree":
        extra = tuple((i,) for i in range(1, n + 1)) if n else ()
        return cls(tuple(((a,), (b,)) for a, b in pairs), extra)

    @classmethod
    def parse(cls, text: str) -> "DirectedTree":
        return cls(tuple(parse_tree_edges(text)))

    def __str__(self) -> str:
        return format_tree_edges(self.edges)

    @property
    def n(self) -> int:
        return sum(len(v) for v in self.vertices)

    @property
    def is_label_tree(self) -> bool:
        return all(len(v) == 1 for v in self.vertices)

    @cached_property
    def vertex_index(self) -> dict[Block, int]:
        return {v: k for k, v in enumerate(self.vertices)}

    def orientation(self) -> OrientationConstraint:
        """Strict p_i < p_j for every edge, on representative labels of each block."""
        return OrientationConstraint.strict((a[0], b[0]) for a, b in self.edges)

    def components_without(self, edge_index: int) -> tuple[frozenset[Block], frozenset[Block]]:
        """Vertex sets on the tail side and head side after deleting one edge."""
        adj: dict[Block, list[Block]] = {v: [] for v in self.vertices}
        for k, (a, b) in enumerate(self.edges):
            if k != edge_index:
                adj[a].append(b)
                adj[b].append(a)
        tail, head = self.edges[edge_index]
        seen = {tail}
        stack = [tail]
        while stack:
            v = stack.pop()
            for w in adj[v]:
                if w not in seen:
                    seen.add(w)
                    stack.append(w)
        return frozenset(seen), frozenset(self.vertices) - frozenset(seen)


def _block(v) -> Block:
    if isinstance(v, int):
        return (v,)
    block = tuple(sorted(v))
    if not block:
        raise DomainError("empty tree vertex")
    return block


def all_directed_trees(n: int) -> list[DirectedTree]:
    """Every labeled tree on {1..n} with every orientation of its edges."""
    out = []
    for pairs in labeled_trees(n):
        m = len(pairs)
        for mask in range(1 << m):
            edges = [(b, a) if mask >> k & 1 else (a, b) for k, (a, b) in enumerate(pairs)]
            out.append(DirectedTree.from_pairs(edges, n))
    return out


def labeled_trees(n: int) -> list[tuple[tuple[int, int], ...]]:
    """Undirected labeled trees on {1..n} via Pruefer sequences (n^(n-2) of them)."""
    if n == 1:
        return [()]
    if n == 2:
        return [((1, 2),)]
    out = []
    for seq in product(range(1, n + 1), repeat=n - 2):
        degree = [1] * (n + 1)
        for x in seq:
            degree[x] += 1
        edges = []
        for x in seq:
            leaf = next(i for i in range(1, n + 1) if degree[i] == 1)
            edges.append((min(leaf, x), max(leaf, x)))
            degree[leaf] -= 1
            degree[x] -= 1
        u, w = (i for i in range(1, n + 1) if degree[i] == 1)
        edges.append((u, w))
        out.append(tuple(sorted(edges)))
    return out


def path_tree(order: Sequence[int]) -> DirectedTree:
    return DirectedTree.from_pairs(zip(order, order[1:]), len(order))
