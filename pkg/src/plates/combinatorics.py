"""Ordered set partitions, packed words, standard composites and their counts.

Labels are positive integers.  Blocks are stored sorted so that equality and
hashing are structural; composite factors are stored by ascending minimum
support label.
"""
from __future__ import annotations

import os
from dataclasses import dataclass
from functools import cache, cached_property
from math import factorial
from typing import Iterable, Iterator, Mapping, Sequence

from .errors import DomainError, ResourceError

DEFAULT_MAX_N = 8


def enumeration_cap() -> int:
    """Largest n accepted by enumerating operations (``PLATES_MAX_N`` overrides)."""
    raw = os.environ.get("PLATES_MAX_N")
    if raw is None:
        return DEFAULT_MAX_N
    try:
        cap = int(raw)
    except ValueError:
        raise DomainError(f"PLATES_MAX_N must be an integer, got {raw!r}") from None
    if cap < 1:
        raise DomainError("PLATES_MAX_N must be positive")
    return cap


def check_cap(n: int, force: bool = False) -> None:
    if n < 1:
        raise DomainError(f"n must be at least 1, got {n}")
    if not force and n > enumeration_cap():
        raise ResourceError(
            f"n={n} exceeds the enumeration cap {enumeration_cap()} "
            "(raise PLATES_MAX_N or use --force)"
        )


def _bits(mask: int) -> Iterator[int]:
    i = 0
    while mask:
        if mask & 1:
            yield i
        mask >>= 1
        i += 1


# ---------------------------------------------------------------------------
# domain types


@dataclass(frozen=True)
class OrderedSetPartition:
    """A sequence of disjoint nonempty blocks; the label of a plate."""

    blocks: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        blocks = tuple(tuple(sorted(b)) for b in self.blocks)
        if not blocks:
            raise DomainError("an ordered set partition needs at least one block")
        seen: set[int] = set()
        for block in blocks:
            if not block:
                raise DomainError("blocks must be nonempty")
            for label in block:
                if not isinstance(label, int) or isinstance(label, bool) or label < 1:
                    raise DomainError(f"labels must be positive integers, got {label!r}")
                if label in seen:
                    raise DomainError(f"label {label} occurs twice")
                seen.add(label)
        object.__setattr__(self, "blocks", blocks)

    @classmethod
    def of(cls, *blocks: Iterable[int] | int) -> "OrderedSetPartition":
        """``OrderedSetPartition.of({1, 2}, 3)`` is the partition (12|3)."""
        return cls(tuple((b,) if isinstance(b, int) else tuple(b) for b in blocks))

    @classmethod
    def permutation(cls, labels: Iterable[int]) -> "OrderedSetPartition":
        return cls(tuple((i,) for i in labels))

    def __len__(self) -> int:
        return len(self.blocks)

    def __str__(self) -> str:
        return "|".join(",".join(map(str, b)) for b in self.blocks)

    @cached_property
    def ground(self) -> frozenset[int]:
        return frozenset(i for b in self.blocks for i in b)

    @cached_property
    def position(self) -> dict[int, int]:
        """Map label -> 1-based index of the block containing it."""
        return {i: k + 1 for k, b in enumerate(self.blocks) for i in b}

    @property
    def is_standard(self) -> bool:
        return min(self.ground) in self.blocks[0]

    @property
    def is_permutation(self) -> bool:
        return all(len(b) == 1 for b in self.blocks)

    @property
    def is_trivial(self) -> bool:
        """A single block of size one: the convolution identity."""
        return len(self.blocks) == 1 and len(self.blocks[0]) == 1

    def is_full(self, n: int) -> bool:
        return len(self.ground) == n and self.ground == frozenset(range(1, n + 1))


PackedWord = tuple[int, ...]


@dataclass(frozen=True)
class CompositeSetPartition:
    """An unordered collection of ordered set partitions on disjoint supports."""

    factors: tuple[OrderedSetPartition, ...]

    def __post_init__(self):
        factors = tuple(sorted(self.factors, key=lambda f: min(f.ground)))
        if not factors:
            raise DomainError("a composite set partition needs at least one factor")
        seen: set[int] = set()
        for f in factors:
            if not isinstance(f, OrderedSetPartition):
                raise DomainError(f"factors must be ordered set partitions, got {f!r}")
            if seen & f.ground:
                raise DomainError("factor supports must be disjoint")
            seen |= f.ground
        object.__setattr__(self, "factors", factors)

    @classmethod
    def of(cls, *factors) -> "CompositeSetPartition":
        """Accepts ordered set partitions or block sequences for each factor."""
        out = []
        for f in factors:
            if isinstance(f, OrderedSetPartition):
                out.append(f)
            elif isinstance(f, int):
                out.append(OrderedSetPartition(((f,),)))
            else:
                out.append(OrderedSetPartition.of(*f))
        return cls(tuple(out))

    def __len__(self) -> int:
        return len(self.factors)

    def __str__(self) -> str:
        return "*".join(map(str, self.factors))

    @cached_property
    def ground(self) -> frozenset[int]:
        return frozenset().union(*(f.ground for f in self.factors))

    @property
    def n_blocks(self) -> int:
        """Total number of blocks over all factors (the ``m`` of the sign rule)."""
        return sum(len(f) for f in self.factors)

    @property
    def is_standard(self) -> bool:
        return all(f.is_standard for f in self.factors)

    @property
    def trivial_mask(self) -> tuple[bool, ...]:
        return tuple(f.is_trivial for f in self.factors)

    @property
    def nontrivial_factors(self) -> tuple[OrderedSetPartition, ...]:
        return tuple(f for f in self.factors if not f.is_trivial)

    @property
    def all_singleton_blocks(self) -> bool:
        return all(f.is_permutation for f in self.factors)

    def is_full(self, n: int) -> bool:
        return self.ground == frozenset(range(1, n + 1))

    def with_singletons(self, n: int) -> "CompositeSetPartition":
        """Add the trivial factor (i) for every label of {1..n} not yet covered."""
        missing = sorted(set(range(1, n + 1)) - self.ground)
        if not missing:
            return self
        return CompositeSetPartition(self.factors + tuple(OrderedSetPartition(((i,),)) for i in missing))

    def times(self, other: "CompositeSetPartition") -> "CompositeSetPartition":
        """Label of the convolution product of two composites on disjoint supports."""
        return CompositeSetPartition(self.factors + other.factors)


@dataclass(frozen=True)
class OrientationConstraint:
    """Pairs ``(a, b, strict)`` meaning p_a < p_b (strict) or p_a <= p_b."""

    pairs: tuple[tuple[int, int, bool], ...]

    def __post_init__(self):
        pairs = tuple((int(a), int(b), bool(s)) for a, b, s in self.pairs)
        for a, b, _ in pairs:
            if a == b:
                raise DomainError(f"orientation pair ({a},{a}) is degenerate")
        object.__setattr__(self, "pairs", pairs)

    @property
    def labels(self) -> frozenset[int]:
        return frozenset(x for a, b, _ in self.pairs for x in (a, b))

    @classmethod
    def strict(cls, pairs: Iterable[tuple[int, int]]) -> "OrientationConstraint":
        return cls(tuple((a, b, True) for a, b in pairs))

    @classmethod
    def from_composite(cls, csp: CompositeSetPartition) -> "OrientationConstraint":
        """Strict orientations between consecutive blocks of every factor."""
        pairs = []
        for f in csp.factors:
            for left, right in zip(f.blocks, f.blocks[1:]):
                pairs.extend((a, b, True) for a in left for b in right)
        return cls(tuple(pairs))


# ---------------------------------------------------------------------------
# packed words and lexicographic order


def _require_full(osp: OrderedSetPartition) -> int:
    n = len(osp.ground)
    if not osp.is_full(n):
        raise DomainError(f"ground set of {osp} is not of the form {{1..n}}")
    return n


def packed_word(osp: OrderedSetPartition) -> PackedWord:
    """c_i = j - 1 when label i lies in the j-th block."""
    n = _require_full(osp)
    pos = osp.position
    return tuple(pos[i] - 1 for i in range(1, n + 1))


def is_packed(word: Sequence[int]) -> bool:
    if not word:
        return False
    if any(not isinstance(c, int) or c < 0 for c in word):
        return False
    return set(word) == set(range(max(word) + 1))


def osp_from_packed_word(word: Sequence[int]) -> OrderedSetPartition:
    word = tuple(word)
    if not is_packed(word):
        raise DomainError(f"{word} is not a packed word")
    blocks = [[] for _ in range(max(word) + 1)]
    for label, c in enumerate(word, start=1):
        blocks[c].append(label)
    return OrderedSetPartition(tuple(tuple(b) for b in blocks))


def lex_compare(a: OrderedSetPartition, b: OrderedSetPartition) -> int:
    """-1, 0 or 1 as the packed word of ``a`` is below, equal to or above that of ``b``."""
    if a.ground != b.ground:
        raise DomainError(f"cannot compare {a} and {b}: different ground sets")
    wa, wb = packed_word(a), packed_word(b)
    return (wa > wb) - (wa < wb)


def label_key(osp: OrderedSetPartition) -> tuple:
    """Sort key agreeing with the packed-word order on full ground sets.

    Labels on other supports are ordered by support first, then by the
    packed word relative to the support.
    """
    support = tuple(sorted(osp.ground))
    pos = osp.position
    return (len(support), support, tuple(pos[i] for i in support))


def composite_key(csp: CompositeSetPartition) -> tuple:
    """Standard composites sort like their images under standard composition."""
    if csp.is_standard:
        return (0, label_key(standard_composition(csp)))
    return (1, tuple(label_key(f) for f in csp.factors))


# ---------------------------------------------------------------------------
# standard decomposition (a Foata-type bijection)


def standard_decomposition(osp: OrderedSetPartition) -> CompositeSetPartition:
    """Cut ``osp`` into standard factors, peeling from the right.

    Repeatedly locate the block holding the smallest label still present;
    that block and everything to its right form the next factor.
    """
    blocks = list(osp.blocks)
    factors = []
    while blocks:
        smallest = min(i for b in blocks for i in b)
        cut = next(k for k, b in enumerate(blocks) if smallest in b)
        factors.append(OrderedSetPartition(tuple(blocks[cut:])))
        del blocks[cut:]
    return CompositeSetPartition(tuple(factors))


def standard_composition(csp: CompositeSetPartition) -> OrderedSetPartition:
    """Inverse of :func:`standard_decomposition`."""
    if not csp.is_standard:
        raise DomainError(f"{csp} is not a standard composite set partition")
    ordered = sorted(csp.factors, key=lambda f: min(f.ground), reverse=True)
    return OrderedSetPartition(tuple(b for f in ordered for b in f.blocks))


# ---------------------------------------------------------------------------
# orientations


def orientation_satisfied(
    osp: OrderedSetPartition,
    constraint: OrientationConstraint,
    factor_map: Mapping[int, int] | None = None,
) -> bool:
    """Check every pair of ``constraint`` against the block positions of ``osp``.

    With ``factor_map`` (label -> factor id), pairs whose labels belong to
    different factors hold automatically.
    """
    pos = osp.position
    for a, b, strict in constraint.pairs:
        if a not in pos or b not in pos:
            raise DomainError(f"orientation label not in ground set of {osp}")
        if factor_map is not None and factor_map[a] != factor_map[b]:
            continue
        if strict and not pos[a] < pos[b]:
            return False
        if not strict and not pos[a] <= pos[b]:
            return False
    return True


def composite_satisfies(csp: CompositeSetPartition, constraint: OrientationConstraint) -> bool:
    """Composite convention: different factors satisfy any pair; same factor compares blocks."""
    factor_map = {i: k for k, f in enumerate(csp.factors) for i in f.ground}
    for a, b, strict in constraint.pairs:
        if a not in factor_map or b not in factor_map:
            raise DomainError(f"orientation label not in ground set of {csp}")
        if factor_map[a] != factor_map[b]:
            continue
        pos = csp.factors[factor_map[a]].position
        if (pos[a] >= pos[b]) if strict else (pos[a] > pos[b]):
            return False
    return True


# ---------------------------------------------------------------------------
# lumpings of atoms under orientation constraints


def ordered_lumpings(
    atoms: Sequence[Iterable[int]],
    strict: Iterable[tuple[int, int]] = (),
    weak: Iterable[tuple[int, int]] = (),
) -> list[OrderedSetPartition]:
    """All ordered set partitions whose blocks are unions of ``atoms``.

    ``strict`` holds index pairs (i, j) requiring atom i in a block strictly
    left of atom j; ``weak`` pairs allow the same block.
    """
    atoms = [tuple(a) for a in atoms]
    k = len(atoms)
    strict_pred = [0] * k
    weak_pred = [0] * k
    for i, j in strict:
        strict_pred[j] |= 1 << i
    for i, j in weak:
        weak_pred[j] |= 1 << i
    full = (1 << k) - 1
    out: list[OrderedSetPartition] = []

    def rec(placed: int, acc: list[int]) -> None:
        if placed == full:
            out.append(OrderedSetPartition(tuple(
                tuple(x for i in _bits(m) for x in atoms[i]) for m in acc
            )))
            return
        cand = 0
        for i in range(k):
            if not (placed >> i) & 1 and not strict_pred[i] & ~placed:
                cand |= 1 << i
        sub = cand
        while sub:
            reach = placed | sub
            if all(not weak_pred[i] & ~reach for i in _bits(sub)):
                acc.append(sub)
                rec(reach, acc)
                acc.pop()
            sub = (sub - 1) & cand

    rec(0, [])
    return out


def shuffle_lumpings(csp: CompositeSetPartition) -> list[tuple[OrderedSetPartition, int]]:
    """Shuffle-lumpings of the factors with sign (-1)^(m - len), sorted by label key."""
    atoms: list[tuple[int, ...]] = []
    strict = []
    for f in csp.factors:
        start = len(atoms)
        atoms.extend(f.blocks)
        strict.extend((start + i, start + i + 1) for i in range(len(f) - 1))
    m = len(atoms)
    result = [(pi, -1 if (m - len(pi)) % 2 else 1) for pi in ordered_lumpings(atoms, strict)]
    result.sort(key=lambda t: label_key(t[0]))
    return result


# ---------------------------------------------------------------------------
# enumeration


def _packed_words(n: int) -> Iterator[PackedWord]:
    """Packed words of length n in lexicographic order."""
    word = [0] * n

    def rec(i: int, used: int, top: int) -> Iterator[PackedWord]:
        if i == n:
            yield tuple(word)
            return
        remaining = n - i - 1
        for v in range(n):
            new_used = used | (1 << v)
            new_top = max(top, v)
            gaps = new_top + 1 - bin(new_used).count("1")
            if gaps > remaining:
                continue
            word[i] = v
            yield from rec(i + 1, new_used, new_top)

    yield from rec(0, 0, -1)


def enumerate_osps(n: int, force: bool = False) -> list[OrderedSetPartition]:
    """All ordered set partitions of {1..n} in lexicographic order."""
    check_cap(n, force)
    return [osp_from_packed_word(w) for w in _packed_words(n)]


def _set_partitions(items: Sequence[int]) -> Iterator[list[list[int]]]:
    if not items:
        yield []
        return
    first, rest = items[0], items[1:]
    for part in _set_partitions(rest):
        yield [[first]] + part
        for k in range(len(part)):
            yield part[:k] + [[first] + part[k]] + part[k + 1:]


def _osps_of(items: Sequence[int]) -> Iterator[tuple[tuple[int, ...], ...]]:
    if not items:
        yield ()
        return
    items = list(items)
    k = len(items)
    for mask in range(1, 1 << k):
        block = tuple(items[i] for i in range(k) if mask >> i & 1)
        rest = [items[i] for i in range(k) if not mask >> i & 1]
        for tail in _osps_of(rest):
            yield (block,) + tail


def standard_osps_of(items: Iterable[int]) -> Iterator[OrderedSetPartition]:
    """Standard ordered set partitions of a label set: the minimum sits in the first block."""
    items = sorted(items)
    low, rest = items[0], items[1:]
    k = len(rest)
    for mask in range(1 << k):
        block = (low,) + tuple(rest[i] for i in range(k) if mask >> i & 1)
        others = [rest[i] for i in range(k) if not mask >> i & 1]
        for tail in _osps_of(others):
            yield OrderedSetPartition((block,) + tail)


def enumerate_standard_csps(n: int, k: int | None = None, force: bool = False) -> list[CompositeSetPartition]:
    """Standard composite set partitions of {1..n}, optionally with exactly ``k`` factors.

    Built directly from set partitions (not through the standard
    decomposition), sorted like their standard compositions.
    """
    check_cap(n, force)
    if k is not None and not 1 <= k <= n:
        raise DomainError(f"factor count k must satisfy 1 <= k <= {n}, got {k}")
    out = []
    for parts in _set_partitions(list(range(1, n + 1))):
        if k is not None and len(parts) != k:
            continue
        choices = [list(standard_osps_of(p)) for p in parts]

        def rec(i: int, acc: list[OrderedSetPartition]) -> None:
            if i == len(choices):
                out.append(CompositeSetPartition(tuple(acc)))
                return
            for f in choices[i]:
                acc.append(f)
                rec(i + 1, acc)
                acc.pop()

        rec(0, [])
    out.sort(key=composite_key)
    return out


# ---------------------------------------------------------------------------
# counting


@cache
def stirling2(n: int, k: int) -> int:
    """Set partitions of an n-set into k blocks."""
    if n == k:
        return 1
    if k <= 0 or k > n:
        return 0
    return k * stirling2(n - 1, k) + stirling2(n - 1, k - 1)


@cache
def stirling1(n: int, k: int) -> int:
    """Unsigned Stirling numbers of the first kind: permutations of n with k cycles."""
    if n == k:
        return 1
    if k <= 0 or k > n:
        return 0
    return (n - 1) * stirling1(n - 1, k) + stirling1(n - 1, k - 1)


def ordered_bell(n: int) -> int:
    return sum(factorial(k) * stirling2(n, k) for k in range(1, n + 1))


def cyclic_bell(n: int) -> int:
    return sum(factorial(k - 1) * stirling2(n, k) for k in range(1, n + 1))


def composite_count(n: int, k: int) -> int:
    """Standard composites of {1..n} with k factors: sum_i S(n, i) s(i, k)."""
    return sum(stirling2(n, i) * stirling1(i, k) for i in range(k, n + 1))


@dataclass(frozen=True)
class DimensionTable:
    n: int
    ordered_bell: int
    composite_row: tuple[int, ...]
    stirling1_row: tuple[int, ...]
    stirling2_row: tuple[int, ...]
    cyclic_bell: int
    hatP1_total: int
    P1_dim: int

    def as_dict(self) -> dict:
        return {
            "n": self.n,
            "ordered_bell": self.ordered_bell,
            "composite_row": list(self.composite_row),
            "stirling1_row": list(self.stirling1_row),
            "stirling2_row": list(self.stirling2_row),
            "cyclic_bell": self.cyclic_bell,
            "hatP1_total": self.hatP1_total,
            "P1_dim": self.P1_dim,
        }


def dims(n: int) -> DimensionTable:
    """Dimensions of the four spaces and the graded rows of the canonical basis."""
    if n < 1:
        raise DomainError(f"n must be at least 1, got {n}")
    s1 = tuple(stirling1(n, k) for k in range(1, n + 1))
    return DimensionTable(
        n=n,
        ordered_bell=ordered_bell(n),
        composite_row=tuple(composite_count(n, k) for k in range(1, n + 1)),
        stirling1_row=s1,
        stirling2_row=tuple(stirling2(n, k) for k in range(1, n + 1)),
        cyclic_bell=cyclic_bell(n),
        hatP1_total=sum(s1),
        P1_dim=factorial(n - 1),
    )
