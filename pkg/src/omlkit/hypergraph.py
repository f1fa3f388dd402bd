"""Context hypergraphs: atoms grouped into blocks (maximal contexts).

A two-valued homomorphism on a finite power-set block sends exactly one atom
to 1, so a compatible family of block valuations is the same thing as a set
of atoms meeting every block exactly once. That search is an exact cover
problem (blocks are the columns, atoms the rows) and is solved here with
Knuth's Algorithm X.
"""

from __future__ import annotations

import itertools
import warnings
from dataclasses import dataclass
from typing import Iterable, Iterator, Sequence

from .lattice import FiniteOrtholattice, LatticeError, _assemble, check_ortholattice, check_orthomodular


class InvalidHypergraph(ValueError):
    pass


class BlocksOverlapTooMuch(ValueError):
    pass


class NotOrthomodularAfterPaste(LatticeError):
    def __init__(self, message: str, loop: "Loop | None" = None):
        super().__init__(message)
        self.loop = loop


@dataclass(frozen=True)
class ContextHypergraph:
    atom_count: int
    blocks: tuple[tuple[int, ...], ...]
    labels: tuple[str, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "blocks", tuple(tuple(b) for b in self.blocks))
        if not self.labels:
            object.__setattr__(self, "labels", tuple(f"p{i}" for i in range(self.atom_count)))
        else:
            object.__setattr__(self, "labels", tuple(self.labels))

    @classmethod
    def from_names(cls, blocks: Iterable[Iterable[str]], atoms: Sequence[str] | None = None) -> "ContextHypergraph":
        blocks = [list(b) for b in blocks]
        if atoms is None:
            atoms = list(dict.fromkeys(a for b in blocks for a in b))
        index = {a: i for i, a in enumerate(atoms)}
        return cls(len(atoms), tuple(tuple(index[a] for a in b) for b in blocks), tuple(atoms))

    def degree(self, atom: int) -> int:
        return sum(atom in b for b in self.blocks)

    def validate(self) -> None:
        if self.atom_count < 1:
            raise InvalidHypergraph("hypergraph needs at least one atom")
        if len(self.labels) != self.atom_count:
            raise InvalidHypergraph("one label per atom is required")
        for i, b in enumerate(self.blocks):
            if len(b) < 2:
                raise InvalidHypergraph(f"block {i} has fewer than two atoms")
            if len(set(b)) != len(b):
                raise InvalidHypergraph(f"block {i} repeats an atom")
            if any(not 0 <= a < self.atom_count for a in b):
                raise InvalidHypergraph(f"block {i} names an atom out of range")
        orphans = [self.labels[a] for a in range(self.atom_count) if self.degree(a) == 0]
        if orphans:
            raise InvalidHypergraph(f"atoms in no block: {', '.join(orphans)}")
        for i, j in self.heavy_overlaps():
            warnings.warn(f"blocks {i} and {j} share more than one atom", stacklevel=2)

    def heavy_overlaps(self) -> list[tuple[int, int]]:
        return [
            (i, j)
            for (i, b), (j, c) in itertools.combinations(enumerate(self.blocks), 2)
            if len(set(b) & set(c)) > 1
        ]


@dataclass(frozen=True)
class ParityCertificate:
    """Odd number of blocks, every atom in an even number of them.

    Summing "one true atom per block" over blocks gives the odd block count,
    while summing over true atoms counts each one an even number of times.
    """

    block_count: int
    degrees: tuple[int, ...]

    def valid_for(self, H: ContextHypergraph) -> bool:
        return (
            self.block_count == len(H.blocks)
            and self.block_count % 2 == 1
            and self.degrees == tuple(H.degree(a) for a in range(H.atom_count))
            and all(d % 2 == 0 for d in self.degrees)
        )

    def text(self) -> str:
        evens = sorted(set(self.degrees))
        return (
            f"parity: {self.block_count} blocks each hold exactly one true atom, so true incidences "
            f"total {self.block_count} (odd); every atom lies in an even number of blocks "
            f"(degrees {evens}), so the same total is even. No assignment exists."
        )


def parity_certificate(H: ContextHypergraph) -> ParityCertificate | None:
    degrees = tuple(H.degree(a) for a in range(H.atom_count))
    cert = ParityCertificate(len(H.blocks), degrees)
    return cert if cert.valid_for(H) else None


@dataclass(frozen=True)
class KSResult:
    assignment: frozenset[int] | None
    certificate: ParityCertificate | None = None

    @property
    def found(self) -> bool:
        return self.assignment is not None


def _algorithm_x(columns: dict[int, set[int]], rows: dict[int, list[int]], partial: list[int]) -> Iterator[list[int]]:
    if not columns:
        yield sorted(partial)
        return
    c = min(columns, key=lambda k: (len(columns[k]), k))
    for r in sorted(columns[c]):
        partial.append(r)
        removed = _select(columns, rows, r)
        yield from _algorithm_x(columns, rows, partial)
        _deselect(columns, rows, r, removed)
        partial.pop()


def _select(columns, rows, r):
    removed = []
    for j in rows[r]:
        for i in columns[j]:
            for k in rows[i]:
                if k != j:
                    columns[k].discard(i)
        removed.append(columns.pop(j))
    return removed


def _deselect(columns, rows, r, removed):
    for j in reversed(rows[r]):
        columns[j] = removed.pop()
        for i in columns[j]:
            for k in rows[i]:
                if k != j:
                    columns[k].add(i)


def hypergraph_assignments(
    H: ContextHypergraph, true_atoms: Iterable[int] = (), false_atoms: Iterable[int] = ()
) -> Iterator[frozenset[int]]:
    """Every atom set meeting each block exactly once, honouring forced values."""
    H.validate()
    true_atoms, false_atoms = set(true_atoms), set(false_atoms)
    if true_atoms & false_atoms:
        return
    rows = {a: [i for i, b in enumerate(H.blocks) if a in b] for a in range(H.atom_count)}
    columns = {i: set(b) - false_atoms for i, b in enumerate(H.blocks)}
    partial: list[int] = []
    for a in sorted(true_atoms):
        if any(j not in columns for j in rows[a]):
            return
        partial.append(a)
        _select(columns, rows, a)
    for solution in _algorithm_x(columns, rows, partial):
        yield frozenset(solution)


def hypergraph_assignment(
    H: ContextHypergraph, true_atoms: Iterable[int] = (), false_atoms: Iterable[int] = ()
) -> KSResult:
    """First exactly-one-per-block assignment, or None with a parity certificate when one applies."""
    true_atoms, false_atoms = tuple(true_atoms), tuple(false_atoms)
    first = next(hypergraph_assignments(H, true_atoms, false_atoms), None)
    if first is not None:
        return KSResult(first)
    cert = None if (true_atoms or false_atoms) else parity_certificate(H)
    return KSResult(None, cert)


# -- Greechie pasting ------------------------------------------------------------


@dataclass(frozen=True)
class Loop:
    blocks: tuple[int, ...]
    atoms: tuple[int, ...]

    def describe(self, H: ContextHypergraph) -> str:
        hops = ", ".join(
            f"B{b}-[{H.labels[a]}]-B{self.blocks[(k + 1) % len(self.blocks)]}"
            for k, (b, a) in enumerate(zip(self.blocks, self.atoms))
        )
        return f"loop of order {len(self.blocks)}: {hops}"


def short_loops(H: ContextHypergraph, max_order: int = 4) -> list[Loop]:
    """Cycles of 3..max_order distinct blocks joined by distinct shared atoms."""
    sets = [set(b) for b in H.blocks]
    found = []
    for k in range(3, max_order + 1):
        for seq in itertools.permutations(range(len(sets)), k):
            # one rotation and one direction per cycle
            if seq[0] != min(seq) or seq[1] > seq[-1]:
                continue
            links = []
            for i in range(k):
                common = sets[seq[i]] & sets[seq[(i + 1) % k]]
                if not common:
                    break
                links.append(min(common))
            else:
                if len(set(links)) == k:
                    found.append(Loop(seq, tuple(links)))
    return found


class _UnionFind:
    def __init__(self):
        self.parent: dict = {}

    def find(self, x):
        self.parent.setdefault(x, x)
        while self.parent[x] != x:
            self.parent[x] = self.parent[self.parent[x]]
            x = self.parent[x]
        return x

    def union(self, a, b):
        ra, rb = self.find(a), self.find(b)
        if ra != rb:
            self.parent[max(ra, rb)] = min(ra, rb)


def paste_greechie(H: ContextHypergraph) -> FiniteOrtholattice:
    """Paste the power-set algebras of the blocks along their shared atoms.

    Elements are 0, 1 and the proper nonempty atom subsets of each block. A
    shared atom is one element in every block holding it, and so is its
    complement, since orthocomplements are unique.
    """
    H.validate()
    heavy = H.heavy_overlaps()
    if heavy:
        i, j = heavy[0]
        raise BlocksOverlapTooMuch(f"blocks {i} and {j} share more than one atom")

    uf = _UnionFind()
    nodes = []
    for b, block in enumerate(H.blocks):
        for r in range(1, len(block)):
            for S in itertools.combinations(sorted(block), r):
                node = (len(S), S, b)
                nodes.append(node)
                uf.find(node)
    for (i, b), (j, c) in itertools.combinations(enumerate(H.blocks), 2):
        for a in set(b) & set(c):
            uf.union((1, (a,), i), (1, (a,), j))
            rest_b = tuple(sorted(set(b) - {a}))
            rest_c = tuple(sorted(set(c) - {a}))
            uf.union((len(rest_b), rest_b, i), (len(rest_c), rest_c, j))

    # A shared atom in a two-atom block makes its partner a complement elsewhere,
    # which can merge distinct atoms or turn an atom into a larger join.
    atom_root: dict = {}
    for node in nodes:
        size, S, _ = node
        root = uf.find(node)
        if root[0] != 1:
            continue
        if size != 1:
            raise InvalidHypergraph(f"pasting identifies atom {H.labels[root[1][0]]} with a join of several atoms")
        other = atom_root.setdefault(root, S[0])
        if other != S[0]:
            raise InvalidHypergraph(f"pasting identifies atom {H.labels[S[0]]} with {H.labels[other]}")
    roots = sorted({uf.find(n) for n in nodes})
    index = {r: k + 1 for k, r in enumerate(roots)}
    bottom, top = 0, len(roots) + 1
    n = len(roots) + 2

    def elem(b: int, S) -> int:
        S = tuple(sorted(S))
        if not S:
            return bottom
        if len(S) == len(H.blocks[b]):
            return top
        return index[uf.find((len(S), S, b))]

    labels = ["0"] + ["+".join(H.labels[a] for a in r[1]) for r in roots] + ["1"]
    if len(set(labels)) != n:
        labels = ["0"] + [f"e{k}" for k in range(1, n - 1)] + ["1"]

    up = [1 << x for x in range(n)]
    ortho: dict[int, int] = {bottom: top, top: bottom}
    problem = None
    for b, block in enumerate(H.blocks):
        for r in range(0, len(block) + 1):
            for S in itertools.combinations(sorted(block), r):
                x = elem(b, S)
                up[bottom] |= 1 << x
                up[x] |= 1 << top
                comp = elem(b, set(block) - set(S))
                if ortho.setdefault(x, comp) != comp:
                    problem = f"element {labels[x]} receives two orthocomplements"
                for extra in sorted(set(block) - set(S)):
                    up[x] |= 1 << elem(b, S + (extra,))
    for k in range(n):
        for i in range(n):
            if up[i] >> k & 1:
                up[i] |= up[k]

    def fail(reason: str):
        loops = short_loops(H)
        loop = loops[0] if loops else None
        where = loop.describe(H) if loop else "no loop of order 3 or 4 found"
        return NotOrthomodularAfterPaste(f"pasting is not an orthomodular lattice ({reason}); {where}", loop)

    if problem is not None:
        raise fail(problem)
    try:
        L = _assemble(labels, up, [ortho[x] for x in range(n)])
    except LatticeError as exc:
        raise fail(str(exc)) from None
    bad = check_ortholattice(L) or check_orthomodular(L)
    if bad is not None:
        raise fail(bad.describe(L))
    return L
