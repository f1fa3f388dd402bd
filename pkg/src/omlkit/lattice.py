"""Finite bounded ortholattices stored as dense tables.

Elements are integer indices ``0 .. n-1``; every relation (order, meet, join,
orthocomplement) is precomputed at construction time, so lattice values are
immutable and all queries are table lookups.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from functools import cached_property
from graphlib import CycleError, TopologicalSorter
from typing import Iterable, Sequence


class LatticeError(ValueError):
    pass


class NotALattice(LatticeError):
    pass


class NoBounds(LatticeError):
    pass


class BadInvolution(LatticeError):
    pass


class DegenerateLattice(LatticeError):
    pass


@dataclass(frozen=True)
class Witness:
    """A concrete counterexample to a law: which law, and the offending elements."""

    law: str
    elements: tuple[int, ...]
    detail: str = ""

    def named(self, L: "FiniteOrtholattice") -> tuple[str, ...]:
        return tuple(L.labels[x] for x in self.elements)

    def describe(self, L: "FiniteOrtholattice") -> str:
        text = f"{self.law} fails at ({', '.join(self.named(L))})"
        return f"{text}: {self.detail}" if self.detail else text


def _bits(mask: int) -> list[int]:
    out = []
    i = 0
    while mask:
        if mask & 1:
            out.append(i)
        mask >>= 1
        i += 1
    return out


@dataclass(frozen=True, eq=False)
class FiniteOrtholattice:
    labels: tuple[str, ...]
    leq: tuple[tuple[bool, ...], ...]
    meet_table: tuple[tuple[int, ...], ...]
    join_table: tuple[tuple[int, ...], ...]
    ortho: tuple[int, ...]
    bottom: int
    top: int
    up_masks: tuple[int, ...] = field(repr=False)
    down_masks: tuple[int, ...] = field(repr=False)

    @property
    def element_count(self) -> int:
        return len(self.labels)

    def __len__(self) -> int:
        return len(self.labels)

    @property
    def elements(self) -> range:
        return range(len(self.labels))

    @cached_property
    def _label_index(self) -> dict[str, int]:
        return {name: i for i, name in enumerate(self.labels)}

    def index(self, label: str | int) -> int:
        if isinstance(label, int):
            if not 0 <= label < len(self.labels):
                raise KeyError(label)
            return label
        try:
            return self._label_index[label]
        except KeyError:
            raise KeyError(f"unknown element {label!r}") from None

    def le(self, x: int, y: int) -> bool:
        return self.leq[x][y]

    def meet(self, x: int, y: int) -> int:
        return self.meet_table[x][y]

    def join(self, x: int, y: int) -> int:
        return self.join_table[x][y]

    def neg(self, x: int) -> int:
        return self.ortho[x]

    def meet_all(self, xs: Iterable[int]) -> int:
        acc = self.top
        for x in xs:
            acc = self.meet_table[acc][x]
        return acc

    def join_all(self, xs: Iterable[int]) -> int:
        acc = self.bottom
        for x in xs:
            acc = self.join_table[acc][x]
        return acc

    def names(self, xs: Iterable[int]) -> list[str]:
        return [self.labels[x] for x in sorted(xs)]

    @cached_property
    def covers(self) -> tuple[tuple[int, int], ...]:
        """All pairs ``(x, y)`` where y covers x, sorted by index."""
        out = []
        for x in self.elements:
            above = self.up_masks[x] & ~(1 << x)
            for y in _bits(above):
                between = above & self.down_masks[y] & ~(1 << y)
                if not between:
                    out.append((x, y))
        return tuple(out)

    @cached_property
    def is_orthomodular(self) -> bool:
        return check_ortholattice(self) is None and check_orthomodular(self) is None


def _assemble(labels: Sequence[str], up_masks: Sequence[int], ortho: Sequence[int]) -> FiniteOrtholattice:
    n = len(labels)
    if n == 1:
        raise DegenerateLattice("one-element lattice (0 = 1) is not allowed")
    full = (1 << n) - 1
    down = [0] * n
    for x, up in enumerate(up_masks):
        for y in _bits(up):
            down[y] |= 1 << x
    for x in range(n):
        for y in _bits(up_masks[x]):
            if y != x and up_masks[y] >> x & 1:
                raise NotALattice(f"order is not antisymmetric: {labels[x]} and {labels[y]}")
    bottoms = [x for x in range(n) if up_masks[x] == full]
    tops = [x for x in range(n) if down[x] == full]
    if not bottoms or not tops:
        raise NoBounds("order has no least or no greatest element")

    by_down = {m: x for x, m in enumerate(down)}
    by_up = {m: x for x, m in enumerate(up_masks)}
    meet_rows = []
    join_rows = []
    for x in range(n):
        mrow = []
        jrow = []
        for y in range(n):
            g = by_down.get(down[x] & down[y])
            l = by_up.get(up_masks[x] & up_masks[y])
            if g is None:
                raise NotALattice(f"{labels[x]} and {labels[y]} have no unique meet")
            if l is None:
                raise NotALattice(f"{labels[x]} and {labels[y]} have no unique join")
            mrow.append(g)
            jrow.append(l)
        meet_rows.append(tuple(mrow))
        join_rows.append(tuple(jrow))

    if len(ortho) != n or any(not 0 <= o < n for o in ortho):
        raise BadInvolution("orthocomplement must map every element into the lattice")
    if any(ortho[ortho[x]] != x for x in range(n)):
        raise BadInvolution("orthocomplement is not an involution")

    leq = tuple(tuple(bool(up_masks[x] >> y & 1) for y in range(n)) for x in range(n))
    return FiniteOrtholattice(
        labels=tuple(labels),
        leq=leq,
        meet_table=tuple(meet_rows),
        join_table=tuple(join_rows),
        ortho=tuple(ortho),
        bottom=bottoms[0],
        top=tops[0],
        up_masks=tuple(up_masks),
        down_masks=tuple(down),
    )


def _pairing(n: int, pairs: Iterable[tuple[int, int]], labels: Sequence[str]) -> list[int]:
    ortho = [-1] * n
    for a, b in pairs:
        for x, y in ((a, b), (b, a)):
            if ortho[x] not in (-1, y):
                raise BadInvolution(f"{labels[x]} is paired with both {labels[ortho[x]]} and {labels[y]}")
            ortho[x] = y
    missing = [labels[x] for x in range(n) if ortho[x] == -1]
    if missing:
        raise BadInvolution(f"no orthocomplement given for {', '.join(missing)}")
    return ortho


def _resolve(ref: int | str, lookup: dict[str, int]) -> int:
    if isinstance(ref, str):
        if ref not in lookup:
            raise KeyError(f"unknown element {ref!r}")
        return lookup[ref]
    return ref


def build_from_covers(
    cover_pairs: Iterable[tuple[int | str, int | str]],
    ortho_pairs: Iterable[tuple[int | str, int | str]],
    labels: Sequence[str],
) -> FiniteOrtholattice:
    """Build an ortholattice from (lower, upper) cover pairs and an orthocomplement pairing.

    Pairs may name elements by index or by label. The pairs need not be
    irredundant; the order is their reflexive-transitive closure.
    """
    labels = list(labels)
    n = len(labels)
    lookup = {name: i for i, name in enumerate(labels)}
    if len(lookup) != n:
        raise LatticeError("duplicate element labels")
    succ: dict[int, set[int]] = {x: set() for x in range(n)}
    for lo, hi in cover_pairs:
        lo, hi = _resolve(lo, lookup), _resolve(hi, lookup)
        if lo == hi:
            raise NotALattice(f"cover pair ({labels[lo]}, {labels[hi]}) is reflexive")
        succ[lo].add(hi)
    try:
        order = list(TopologicalSorter(succ).static_order())
    except CycleError as exc:
        raise NotALattice(f"cover relation has a cycle: {exc.args[1]}") from None
    # static_order lists successors before the element, so upper sets are ready.
    up = [0] * n
    for x in order:
        m = 1 << x
        for y in succ[x]:
            m |= up[y]
        up[x] = m
    ortho = _pairing(n, [(_resolve(a, lookup), _resolve(b, lookup)) for a, b in ortho_pairs], labels)
    return _assemble(labels, up, ortho)


def build_from_order(labels: Sequence[str], leq, ortho: Sequence[int]) -> FiniteOrtholattice:
    """Build from a full order predicate ``leq(x, y)`` (or table) and an ortho map."""
    n = len(labels)
    test = leq if callable(leq) else (lambda x, y: leq[x][y])
    up = []
    for x in range(n):
        m = 0
        for y in range(n):
            if x == y or test(x, y):
                m |= 1 << y
        up.append(m)
    for x in range(n):
        for y in _bits(up[x]):
            if up[y] & ~up[x]:
                raise NotALattice("order relation is not transitive")
    return _assemble(labels, up, list(ortho))


# -- law checks ---------------------------------------------------------------


def check_ortholattice(L: FiniteOrtholattice) -> Witness | None:
    """First violation of involution, De Morgan or ``x ∧ ¬x = 0``.

    Unary failures are reported as ``(x, x)`` before the pairs ``(x, y)``.
    """
    o, m, j = L.ortho, L.meet_table, L.join_table
    for x in L.elements:
        if o[o[x]] != x:
            return Witness("involution", (x, x), "¬¬x ≠ x")
        if m[x][o[x]] != L.bottom:
            return Witness("noncontradiction", (x, x), "x ∧ ¬x ≠ 0")
        for y in L.elements:
            if o[j[x][y]] != m[o[x]][o[y]]:
                return Witness("de-morgan", (x, y), "¬(x ∨ y) ≠ ¬x ∧ ¬y")
    return None


def check_orthomodular(L: FiniteOrtholattice) -> Witness | None:
    o, m, j = L.ortho, L.meet_table, L.join_table
    for x in L.elements:
        for y in L.elements:
            xy = j[x][y]
            lhs = j[x][m[o[x]][xy]]
            if lhs != xy:
                return Witness(
                    "orthomodular",
                    (x, y),
                    f"x ∨ (¬x ∧ (x ∨ y)) = {L.labels[lhs]} but x ∨ y = {L.labels[xy]}",
                )
    return None


def atoms(L: FiniteOrtholattice) -> frozenset[int]:
    return frozenset(y for x, y in L.covers if x == L.bottom)


def coatoms(L: FiniteOrtholattice) -> frozenset[int]:
    return frozenset(x for x, y in L.covers if y == L.top)


def check_atomistic(L: FiniteOrtholattice) -> Witness | None:
    ats = sorted(atoms(L))
    for x in L.elements:
        if x == L.bottom:
            continue
        if L.join_all(p for p in ats if L.leq[p][x]) != x:
            return Witness("atomistic", (x,), "x is not the join of the atoms below it")
    return None


@dataclass(frozen=True)
class TripleReport:
    triple: tuple[int, int, int]
    holds_D: bool
    holds_Dstar: bool
    holds_T: bool


def _D(L: FiniteOrtholattice, a: int, b: int, c: int) -> bool:
    m, j = L.meet_table, L.join_table
    return m[j[a][b]][c] == j[m[a][c]][m[b][c]]


def _Dstar(L: FiniteOrtholattice, a: int, b: int, c: int) -> bool:
    m, j = L.meet_table, L.join_table
    return j[m[a][b]][c] == m[j[a][c]][j[b][c]]


def _T(L: FiniteOrtholattice, a: int, b: int, c: int) -> bool:
    return all(_D(L, *p) and _Dstar(L, *p) for p in itertools.permutations((a, b, c)))


def distributive_triples(L: FiniteOrtholattice, a: int, b: int, c: int) -> TripleReport:
    return TripleReport((a, b, c), _D(L, a, b, c), _Dstar(L, a, b, c), _T(L, a, b, c))


def complements(L: FiniteOrtholattice, a: int) -> frozenset[int]:
    return frozenset(
        c for c in L.elements if L.meet_table[a][c] == L.bottom and L.join_table[a][c] == L.top
    )


def check_distributive(L: FiniteOrtholattice, subset: Iterable[int] | None = None) -> Witness | None:
    """First triple of ``subset`` (default: all of L) breaking ``x ∧ (y ∨ z) = (x ∧ y) ∨ (x ∧ z)``."""
    S = sorted(L.elements if subset is None else subset)
    m, j = L.meet_table, L.join_table
    for x in S:
        mx = m[x]
        for y in S:
            for z in S:
                if mx[j[y][z]] != j[mx[y]][mx[z]]:
                    return Witness("distributive", (x, y, z))
    return None


def check_boolean_subset(L: FiniteOrtholattice, subset: Iterable[int]) -> Witness | None:
    """Check that ``subset`` is a Boolean sub-ortholattice: bounded, closed, distributive."""
    S = frozenset(subset)
    for bound in (L.bottom, L.top):
        if bound not in S:
            return Witness("bounds", (bound,), "subset misses a bound")
    for x in sorted(S):
        if L.ortho[x] not in S:
            return Witness("ortho-closure", (x,))
        for y in sorted(S):
            if L.meet_table[x][y] not in S or L.join_table[x][y] not in S:
                return Witness("closure", (x, y))
    if _embeds_in_powerset(L, S):
        return None
    return check_distributive(L, S)


def _embeds_in_powerset(L: FiniteOrtholattice, S: frozenset[int]) -> bool:
    """Quadratic sufficient test for distributivity of a closed subset.

    If x -> {atoms of S below x} is injective and preserves meet and join,
    S is a sublattice of a power set. Every Boolean S passes.
    """
    nonzero = [x for x in S if x != L.bottom]
    ats = [a for a in nonzero if not any(b != a and L.leq[b][a] for b in nonzero)]
    mask = {x: sum(1 << i for i, a in enumerate(ats) if L.leq[a][x]) for x in S}
    if len(set(mask.values())) != len(S):
        return False
    m, j = L.meet_table, L.join_table
    return all(
        mask[m[x][y]] == mask[x] & mask[y] and mask[j[x][y]] == mask[x] | mask[y] for x in S for y in S
    )


def center(L: FiniteOrtholattice) -> frozenset[int]:
    """Central elements: complemented and in a T-triple with every pair."""
    out = []
    for z in L.elements:
        if not complements(L, z):
            continue
        if all(_T(L, a, b, z) for a in L.elements for b in L.elements if a <= b):
            out.append(z)
    result = frozenset(out)
    bad = check_boolean_subset(L, result)
    if bad is not None:
        raise LatticeError(f"center is not a Boolean sublattice: {bad.describe(L)}")
    return result


def generated_sublattice(L: FiniteOrtholattice, seed: Iterable[int]) -> frozenset[int]:
    """Least subset containing seed, 0 and 1 that is closed under ∧, ∨ and ¬."""
    S = set(seed) | {L.bottom, L.top}
    pending = list(S)
    while pending:
        x = pending.pop()
        fresh = {L.ortho[x]}
        for y in list(S):
            fresh.add(L.meet_table[x][y])
            fresh.add(L.join_table[x][y])
        fresh -= S
        S |= fresh
        pending.extend(fresh)
    return frozenset(S)


def product(L1: FiniteOrtholattice, L2: FiniteOrtholattice) -> FiniteOrtholattice:
    """Direct product with componentwise order and orthocomplement."""
    n2 = len(L2)
    pairs = [(i, j) for i in L1.elements for j in L2.elements]
    labels = [f"({L1.labels[i]},{L2.labels[j]})" for i, j in pairs]
    up = []
    for i, j in pairs:
        m = 0
        for i2 in _bits(L1.up_masks[i]):
            for j2 in _bits(L2.up_masks[j]):
                m |= 1 << (i2 * n2 + j2)
        up.append(m)
    ortho = [L1.ortho[i] * n2 + L2.ortho[j] for i, j in pairs]
    return _assemble(labels, up, ortho)


# -- standard constructions ------------------------------------------------------


def boolean_algebra(n: int, names: Sequence[str] | None = None) -> FiniteOrtholattice:
    """The power-set algebra on ``n`` atoms; element index = subset bitmask."""
    if n < 1:
        raise DegenerateLattice("a Boolean algebra needs at least one atom")
    names = list(names) if names is not None else [chr(ord("a") + i) for i in range(n)]
    full = (1 << n) - 1
    labels = []
    for s in range(1 << n):
        if s == 0:
            labels.append("0")
        elif s == full:
            labels.append("1")
        else:
            labels.append("".join(names[i] for i in range(n) if s >> i & 1))
    up = []
    for s in range(1 << n):
        m = 0
        for t in range(1 << n):
            if s & t == s:
                m |= 1 << t
        up.append(m)
    return _assemble(labels, up, [full ^ s for s in range(1 << n)])


def horizontal_sum(k: int) -> FiniteOrtholattice:
    """MO_k: k four-element blocks {0, x, ¬x, 1} glued at their bounds."""
    names = [chr(ord("a") + i) for i in range(k)]
    labels = ["0"]
    for a in names:
        labels += [a, "n" + a]
    labels.append("1")
    covers = [("0", x) for x in labels[1:-1]] + [(x, "1") for x in labels[1:-1]]
    orthos = [("0", "1")] + [(a, "n" + a) for a in names]
    return build_from_covers(covers, orthos, labels)
