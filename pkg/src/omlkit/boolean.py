"""Boolean sublattices (blocks), their filters, quotients and two-valued homomorphisms."""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import cached_property, lru_cache
from typing import Iterable, Iterator, Mapping

import networkx as nx

from .lattice import (
    FiniteOrtholattice,
    LatticeError,
    build_from_order,
    check_boolean_subset,
    check_orthomodular,
    generated_sublattice,
)


class ImproperFilter(ValueError):
    pass


class NotSeparable(ValueError):
    pass


class NotBoolean(ValueError):
    pass


@dataclass(frozen=True)
class Block:
    """A Boolean sub-ortholattice of ``host``; maximal ones model contexts."""

    host: FiniteOrtholattice
    members: frozenset[int]

    def __post_init__(self):
        object.__setattr__(self, "members", frozenset(self.members))

    def __contains__(self, x: int) -> bool:
        return x in self.members

    def __iter__(self) -> Iterator[int]:
        return iter(sorted(self.members))

    def __len__(self) -> int:
        return len(self.members)

    @cached_property
    def atoms(self) -> tuple[int, ...]:
        """Minimal nonzero members, in index order."""
        L = self.host
        nonzero = [x for x in self.members if x != L.bottom]
        return tuple(
            sorted(x for x in nonzero if not any(y != x and L.leq[y][x] for y in nonzero))
        )

    def names(self) -> list[str]:
        return self.host.names(self.members)

    def verify(self) -> None:
        bad = check_boolean_subset(self.host, self.members)
        if bad is not None:
            raise NotBoolean(bad.describe(self.host))


def as_block(L: FiniteOrtholattice, members: Iterable[int]) -> Block:
    B = Block(L, frozenset(members))
    B.verify()
    return B


def commutes(L: FiniteOrtholattice, x: int, y: int) -> bool:
    m, o = L.meet_table, L.ortho
    return L.join_table[m[x][y]][m[x][o[y]]] == x


def maximal_blocks(L: FiniteOrtholattice) -> list[Block]:
    """All maximal Boolean sublattices of an orthomodular lattice.

    In an OML the blocks are exactly the maximal sets of pairwise commuting
    elements, so they are the maximal cliques of the commutation graph.
    """
    return list(_maximal_blocks(L))


@lru_cache(maxsize=64)
def _maximal_blocks(L: FiniteOrtholattice) -> tuple[Block, ...]:
    bad = check_orthomodular(L)
    if bad is not None:
        raise LatticeError(f"blocks need an orthomodular lattice: {bad.describe(L)}")
    n = len(L)
    closed = [1 << x for x in range(n)]
    for x in L.elements:
        for y in range(x + 1, n):
            if commutes(L, x, y):
                closed[x] |= 1 << y
                closed[y] |= 1 << x
    # Elements with the same closed neighbourhood lie in exactly the same
    # maximal cliques, so search the graph of twin classes and expand.
    twins: dict[int, list[int]] = {}
    for x in L.elements:
        twins.setdefault(closed[x], []).append(x)
    reps = [group[0] for group in twins.values()]
    G = nx.Graph()
    G.add_nodes_from(reps)
    G.add_edges_from((r, s) for r, s in itertools.combinations(reps, 2) if closed[r] >> s & 1)
    blocks = sorted(
        tuple(sorted(x for r in c for x in twins[closed[r]])) for c in nx.find_cliques(G)
    )
    out = []
    for members in blocks:
        B = Block(L, frozenset(members))
        B.verify()
        out.append(B)
    return tuple(out)


def _set_partitions(items: list[int]) -> Iterator[list[list[int]]]:
    if not items:
        yield []
        return
    first, rest = items[0], items[1:]
    for part in _set_partitions(rest):
        yield [[first]] + part
        for i in range(len(part)):
            yield part[:i] + [[first] + part[i]] + part[i + 1 :]


def boolean_subalgebras(L: FiniteOrtholattice) -> list[Block]:
    """Every Boolean sublattice of an OML, maximal or not.

    Each one lives inside some block and is fixed by a partition of that
    block's atoms (its own atoms are the joins of the parts).
    """
    seen: set[frozenset[int]] = set()
    for B in maximal_blocks(L):
        for parts in _set_partitions(list(B.atoms)):
            tops = [L.join_all(p) for p in parts]
            members = set()
            for mask in range(1 << len(tops)):
                members.add(L.join_all(t for i, t in enumerate(tops) if mask >> i & 1))
            seen.add(frozenset(members))
    return [Block(L, s) for s in sorted(seen, key=lambda s: (len(s), sorted(s)))]


# -- filters -------------------------------------------------------------------------


@dataclass(frozen=True)
class Filter:
    host: Block
    members: frozenset[int]

    def __contains__(self, x: int) -> bool:
        return x in self.members

    @property
    def proper(self) -> bool:
        return self.host.host.bottom not in self.members

    @cached_property
    def maximal(self) -> bool:
        return self.proper and len(quotient(self.host, self).classes) == 2

    def names(self) -> list[str]:
        return self.host.host.names(self.members)


def principal_filter(B: Block, x: int) -> Filter:
    L = B.host
    return Filter(B, frozenset(y for y in B.members if L.leq[x][y]))


def generated_filter(B: Block, X: Iterable[int]) -> Filter:
    """``{x in B : x1 ∧ ... ∧ xn ≤ x for some x1..xn in X}``; ``{1}`` for empty X.

    In a finite algebra the meet of all of X is the smallest such finite meet.
    """
    X = list(X)
    stray = [x for x in X if x not in B.members]
    if stray:
        raise ValueError(f"generators outside the block: {B.host.names(stray)}")
    return principal_filter(B, B.host.meet_all(X))


def is_filter(B: Block, S: Iterable[int]) -> bool:
    L = B.host
    S = frozenset(S)
    if not S:
        return False
    for a in S:
        for x in B.members:
            if L.leq[a][x] and x not in S:
                return False
        for b in S:
            if L.meet_table[a][b] not in S:
                return False
    return True


@dataclass(frozen=True)
class Quotient:
    """``B / F`` as an abstract Boolean algebra, with the natural map."""

    block: Block
    filter: Filter
    classes: tuple[frozenset[int], ...]
    class_of: Mapping[int, int]
    algebra: FiniteOrtholattice

    def hom(self, x: int) -> int:
        return self.class_of[x]


@lru_cache(maxsize=4096)
def quotient(B: Block, F: Filter) -> Quotient:
    """Quotient by the congruence ``x ~ y`` iff ``¬x ∨ y`` and ``x ∨ ¬y`` are in F."""
    if not F.proper:
        raise ImproperFilter("quotient by an improper filter collapses to one class")
    L = B.host
    j, o = L.join_table, L.ortho
    members = sorted(B.members)
    classes: list[frozenset[int]] = []
    class_of: dict[int, int] = {}
    for x in members:
        if x in class_of:
            continue
        cls = frozenset(y for y in members if j[o[x]][y] in F.members and j[x][o[y]] in F.members)
        for y in cls:
            class_of[y] = len(classes)
        classes.append(cls)
    reps = [min(c) for c in classes]
    labels = ["[" + L.labels[r] + "]" for r in reps]
    algebra = build_from_order(
        labels,
        lambda a, b: j[o[reps[a]]][reps[b]] in F.members,
        [class_of[o[r]] for r in reps],
    )
    bad = check_boolean_subset(algebra, algebra.elements)
    if bad is not None:
        raise NotBoolean(f"quotient is not Boolean: {bad.describe(algebra)}")
    for x in members:
        if algebra.ortho[class_of[x]] != class_of[o[x]]:
            raise NotBoolean("natural map does not preserve ¬")
        for y in members:
            if algebra.meet_table[class_of[x]][class_of[y]] != class_of[L.meet_table[x][y]]:
                raise NotBoolean("natural map does not preserve ∧")
            if algebra.join_table[class_of[x]][class_of[y]] != class_of[L.join_table[x][y]]:
                raise NotBoolean("natural map does not preserve ∨")
    return Quotient(B, F, tuple(classes), class_of, algebra)


def extend_to_maximal(B: Block, F: Filter) -> Filter:
    """Grow F to a maximal filter, adding the least-index eligible element first.

    One pass suffices: whenever x is skipped, some member is already below ¬x.
    """
    if not F.proper:
        raise ImproperFilter("cannot extend an improper filter")
    L = B.host
    m = L.meet_all(F.members)
    for x in sorted(B.members):
        if L.leq[m][x]:
            continue
        if L.meet_table[m][x] != L.bottom:
            m = L.meet_table[m][x]
    result = principal_filter(B, m)
    if not result.maximal:
        raise LatticeError("filter extension did not reach a maximal filter")
    return result


def separating_maximal_filter(B: Block, x: int, y: int) -> Filter:
    """A maximal filter containing x but not y, for ``x ≰ y``."""
    L = B.host
    if L.leq[x][y]:
        raise NotSeparable(f"{L.labels[x]} ≤ {L.labels[y]}")
    F = extend_to_maximal(B, generated_filter(B, [x, L.ortho[y]]))
    assert x in F and y not in F
    return F


# -- two-valued homomorphisms ---------------------------------------------------------


@dataclass(frozen=True)
class TwoValuation:
    domain: Block
    assignment: Mapping[int, int]

    def __call__(self, x: int) -> int:
        return self.assignment[x]

    @property
    def atom(self) -> int:
        """The unique atom of the domain sent to 1."""
        (p,) = [a for a in self.domain.atoms if self.assignment[a] == 1]
        return p

    def ones(self) -> frozenset[int]:
        return frozenset(x for x, v in self.assignment.items() if v == 1)

    def named(self) -> dict[str, int]:
        L = self.domain.host
        return {L.labels[x]: self.assignment[x] for x in sorted(self.assignment)}


def valuation_at_atom(B: Block, p: int) -> TwoValuation:
    L = B.host
    return TwoValuation(B, {x: int(L.leq[p][x]) for x in sorted(B.members)})


def valuation_from_filter(B: Block, F: Filter) -> TwoValuation:
    """The natural map ``B → B/F ≅ 2`` for a maximal filter F."""
    if not F.maximal:
        raise ValueError("valuation needs a maximal filter")
    q = quotient(B, F)
    one = q.class_of[B.host.top]
    return TwoValuation(B, {x: int(q.class_of[x] == one) for x in sorted(B.members)})


def enumerate_two_valuations(B: Block) -> list[TwoValuation]:
    """All homomorphisms ``B → 2``, one per atom of B, by atom index."""
    return [valuation_at_atom(B, p) for p in B.atoms]


def is_homomorphism(B: Block, v: Mapping[int, int]) -> bool:
    L = B.host
    if v[L.bottom] != 0 or v[L.top] != 1:
        return False
    for x in B.members:
        if v[L.ortho[x]] != 1 - v[x]:
            return False
        for y in B.members:
            if v[L.meet_table[x][y]] != v[x] * v[y]:
                return False
            if v[L.join_table[x][y]] != max(v[x], v[y]):
                return False
    return True


def closure_block(L: FiniteOrtholattice, seed: Iterable[int]) -> Block:
    """The sublattice generated by ``seed``, checked to be Boolean."""
    return as_block(L, generated_sublattice(L, seed))
