"""Signed plate expansions: convolution products, trees and Weyl chambers."""
from __future__ import annotations

from fractions import Fraction
from functools import lru_cache

from ..combinatorics import (
    CompositeSetPartition,
    OrderedSetPartition,
    check_cap,
    enumerate_osps,
    ordered_lumpings,
    packed_word,
    shuffle_lumpings,
    standard_decomposition,
)
from ..errors import DomainError
from .tree import DirectedTree
from .vector import Basis, PlateVector, Space


def _ground_size(csp: CompositeSetPartition) -> int:
    n = len(csp.ground)
    if not csp.is_full(n):
        raise DomainError(f"supports of {csp} do not cover 1..{n}")
    return n


@lru_cache(maxsize=None)
def _convolution_terms(csp: CompositeSetPartition) -> tuple[tuple[OrderedSetPartition, int], ...]:
    return tuple(shuffle_lumpings(csp))


def convolution_expand(csp: CompositeSetPartition) -> PlateVector:
    """Plate-basis expansion of the convolution product of the factors of ``csp``."""
    n = _ground_size(csp)
    return PlateVector(n, Basis.plate, _convolution_terms(csp))


def tree_terms(tree: DirectedTree) -> list[tuple[OrderedSetPartition, int]]:
    """Ordered set partitions with every edge strictly oriented, signed by lumping depth."""
    index = tree.vertex_index
    strict = [(index[a], index[b]) for a, b in tree.edges]
    m = len(tree.vertices)
    return [(pi, -1 if (m - len(pi)) % 2 else 1) for pi in ordered_lumpings(tree.vertices, strict)]


def tree_expand(tree: DirectedTree, space: Space | str = Space.hatP) -> PlateVector:
    """Signed plate expansion of a simplicial tree cone, filtered term-wise for ``space``.

    Every term is a single full plate, so only the pointedness kill of the
    hatP1/P1 quotients removes anything.
    """
    space = Space.parse(space)
    terms = tree_terms(tree)
    if space in (Space.hatP1, Space.P1):
        terms = [(pi, s) for pi, s in terms if pi.is_permutation]
    return PlateVector(tree.n, Basis.plate, terms)


def weyl_chamber_expansion(sigma) -> PlateVector:
    """The partially open chamber of ``sigma`` as a signed sum of dual faces.

    Adjacent entries forming a descent may be lumped; each lumping
    contributes (-1)^(n - len).
    """
    sigma = tuple(sigma)
    n = len(sigma)
    if sorted(sigma) != list(range(1, n + 1)):
        raise DomainError(f"{sigma} is not a permutation of 1..{n}")
    descents = [i for i in range(n - 1) if sigma[i] > sigma[i + 1]]
    terms = []
    for mask in range(1 << len(descents)):
        merged = {descents[k] for k in range(len(descents)) if mask >> k & 1}
        blocks = [[sigma[0]]]
        for i in range(1, n):
            if i - 1 in merged:
                blocks[-1].append(sigma[i])
            else:
                blocks.append([sigma[i]])
        terms.append((OrderedSetPartition(tuple(map(tuple, blocks))), -1 if (n - len(blocks)) % 2 else 1))
    return PlateVector(n, Basis.dual_face, terms)


# ---------------------------------------------------------------------------
# change of basis


@lru_cache(maxsize=16)
def _basis(n: int) -> tuple[tuple[OrderedSetPartition, ...], dict[OrderedSetPartition, int]]:
    osps = tuple(enumerate_osps(n, force=True))
    return osps, {o: k for k, o in enumerate(osps)}


def plate_basis(n: int, force: bool = False) -> tuple[OrderedSetPartition, ...]:
    """Plates of {1..n} in lexicographic order."""
    check_cap(n, force)
    return _basis(n)[0]


def canonical_column(osp: OrderedSetPartition) -> tuple[tuple[OrderedSetPartition, int], ...]:
    """Plate expansion of the canonical element attached to ``osp``."""
    return _convolution_terms(standard_decomposition(osp))


class ChangeOfBasis:
    """Sparse columns of the matrix sending canonical coordinates to plate coordinates.

    Column j holds the plate expansion of the canonical element labelled by
    the standard decomposition of the j-th plate; rows and columns follow
    the lexicographic order.
    """

    def __init__(self, n: int, force: bool = False):
        check_cap(n, force)
        self.n = n
        self.labels, self.index = _basis(n)
        self.columns: list[dict[int, int]] = []
        for osp in self.labels:
            col = {}
            for pi, sign in canonical_column(osp):
                col[self.index[pi]] = col.get(self.index[pi], 0) + sign
            self.columns.append({i: c for i, c in col.items() if c})

    @property
    def size(self) -> int:
        return len(self.labels)

    def dense(self) -> list[list[int]]:
        m = [[0] * self.size for _ in range(self.size)]
        for j, col in enumerate(self.columns):
            for i, c in col.items():
                m[i][j] = c
        return m

    def is_upper_unitriangular(self) -> bool:
        return all(col.get(j) == 1 and max(col) == j for j, col in enumerate(self.columns))

    def solve(self, rhs: dict[int, Fraction]) -> dict[int, Fraction]:
        """Back-substitution: canonical coordinates x with M x = rhs."""
        work = {i: Fraction(c) for i, c in rhs.items() if c}
        out: dict[int, Fraction] = {}
        while work:
            j = max(work)
            c = work.pop(j)
            if c == 0:
                continue
            out[j] = c
            for i, a in self.columns[j].items():
                if i == j:
                    continue
                v = work.get(i, 0) - c * a
                if v:
                    work[i] = v
                else:
                    work.pop(i, None)
        return out

    def inverse_columns(self) -> list[dict[int, Fraction]]:
        return [self.solve({j: Fraction(1)}) for j in range(self.size)]

    def inverse_dense(self) -> list[list[Fraction]]:
        m = [[Fraction(0)] * self.size for _ in range(self.size)]
        for j, col in enumerate(self.inverse_columns()):
            for i, c in col.items():
                m[i][j] = c
        return m


@lru_cache(maxsize=8)
def change_of_basis(n: int, force: bool = False) -> ChangeOfBasis:
    return ChangeOfBasis(n, force)


def change_of_basis_matrix(n: int, force: bool = False) -> list[list[int]]:
    """Dense integer matrix over the lexicographically ordered plate basis."""
    return change_of_basis(n, force).dense()


def inverse_change_of_basis_matrix(n: int, force: bool = False) -> list[list[Fraction]]:
    return change_of_basis(n, force).inverse_dense()


def lex_rank(osp: OrderedSetPartition) -> int:
    """Mixed-radix value of the packed word: increases with the lexicographic order."""
    word = packed_word(osp)
    base = len(word)
    value = 0
    for c in word:
        value = value * base + c
    return value
