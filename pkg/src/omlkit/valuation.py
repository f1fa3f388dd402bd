"""Global valuations over the blocks of a finite OML, and the searches built on them."""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Iterator, Mapping, Sequence

from .boolean import Block, TwoValuation, maximal_blocks, valuation_at_atom
from .hypergraph import ContextHypergraph, KSResult, hypergraph_assignment
from .lattice import FiniteOrtholattice
from .modal import ModalLattice, possibility_space, two_valuations_of_space


class DomainMismatch(ValueError):
    pass


class ZeroDesignated(ValueError):
    pass


@dataclass(frozen=True)
class GlobalValuation:
    host: FiniteOrtholattice
    per_block: Mapping[Block, TwoValuation]

    @property
    def values(self) -> dict[int, int]:
        out: dict[int, int] = {}
        for v in self.per_block.values():
            out.update(v.assignment)
        return dict(sorted(out.items()))

    def incompatibilities(self) -> list[tuple[Block, Block, int]]:
        """Pairs of blocks whose valuations disagree, with the element they disagree on."""
        bad = []
        for (B, v), (C, w) in itertools.combinations(self.per_block.items(), 2):
            for x in sorted(B.members & C.members):
                if v(x) != w(x):
                    bad.append((B, C, x))
                    break
        return bad

    def named(self) -> dict[str, int]:
        return {self.host.labels[x]: v for x, v in self.values.items()}


def _overlap_order(blocks: Sequence[Block]) -> list[int]:
    """Most-overlapping blocks first, ties by index."""
    def degree(i: int) -> int:
        return sum(
            1 for j, C in enumerate(blocks) if j != i and len(blocks[i].members & C.members) > 2
        )

    return sorted(range(len(blocks)), key=lambda i: (-degree(i), i))


def _search(
    L: FiniteOrtholattice, blocks: Sequence[Block], fixed: Mapping[int, int]
) -> Iterator[dict[int, int]]:
    """Yield block index -> chosen atom for every compatible family respecting ``fixed``."""
    order = _overlap_order(blocks)
    values = dict(fixed)
    choice: dict[int, int] = {}

    def extend(k: int) -> Iterator[dict[int, int]]:
        if k == len(order):
            yield dict(choice)
            return
        i = order[k]
        B = blocks[i]
        members = sorted(B.members)
        for p in B.atoms:
            new = {}
            for x in members:
                val = int(L.leq[p][x])
                cur = values.get(x)
                if cur is None:
                    new[x] = val
                elif cur != val:
                    break
            else:
                values.update(new)
                choice[i] = p
                yield from extend(k + 1)
                del choice[i]
                for x in new:
                    del values[x]

    yield from extend(0)


def _assemble(L: FiniteOrtholattice, blocks: Sequence[Block], choice: Mapping[int, int]) -> GlobalValuation:
    return GlobalValuation(L, {B: valuation_at_atom(B, choice[i]) for i, B in enumerate(blocks)})


def global_valuations(L: FiniteOrtholattice, fixed: Mapping[int, int] | None = None) -> Iterator[GlobalValuation]:
    blocks = maximal_blocks(L)
    for choice in _search(L, blocks, fixed or {}):
        yield _assemble(L, blocks, choice)


def find_global_valuation(L: FiniteOrtholattice, fixed: Mapping[int, int] | None = None) -> GlobalValuation | None:
    """First compatible family of block valuations, or None if there is none.

    ``fixed`` pins element values (element -> 0/1) that every block must respect.
    """
    gv = next(global_valuations(L, fixed), None)
    if gv is not None:
        assert not gv.incompatibilities()
    return gv


def count_global_valuations(L: FiniteOrtholattice) -> int:
    blocks = maximal_blocks(L)
    return sum(1 for _ in _search(L, blocks, {}))


def compatible_actualization(
    M: ModalLattice, f: TwoValuation, require: Mapping[int, int] | None = None
) -> GlobalValuation | None:
    """A global valuation agreeing with ``f`` on each block's share of the possibility space.

    ``require`` adds further pinned element values (e.g. a designated outcome).
    """
    space = possibility_space(M)
    if f.domain.members != space.members or set(f.assignment) != set(space.members):
        raise DomainMismatch("f must be defined exactly on the possibility space")
    L = M.base
    blocks = maximal_blocks(L)
    fixed: dict[int, int] = {}
    for B in blocks:
        for x in B.members & space.members:
            fixed[x] = f(x)
    for x, val in (require or {}).items():
        if fixed.setdefault(x, val) != val:
            return None
    choice = next(_search(L, blocks, fixed), None)
    return None if choice is None else _assemble(L, blocks, choice)


@dataclass(frozen=True)
class MKSReport:
    global_valuation: GlobalValuation | None
    f: TwoValuation | None
    actualization: GlobalValuation | None
    f_checked: int

    @property
    def has_global(self) -> bool:
        return self.global_valuation is not None

    @property
    def has_actualization(self) -> bool:
        return self.actualization is not None

    @property
    def equivalent(self) -> bool:
        return self.has_global == self.has_actualization


def check_mks(M: ModalLattice) -> MKSReport:
    """Search both sides independently: a global valuation, and an actualizable f."""
    gv = find_global_valuation(M.base)
    fs = two_valuations_of_space(M)
    for f in fs:
        act = compatible_actualization(M, f)
        if act is not None:
            return MKSReport(gv, f, act, len(fs))
    return MKSReport(gv, None, None, len(fs))


# -- many-worlds families ------------------------------------------------------------------


@dataclass(frozen=True)
class MWIFamily:
    """One designated outcome per world: (block, element) on a lattice, (block index, atom) on a hypergraph."""

    host: FiniteOrtholattice | ContextHypergraph
    designated: tuple[tuple[Block | int, int], ...]

    def __post_init__(self):
        object.__setattr__(self, "designated", tuple(tuple(d) for d in self.designated))
        for block, x in self.designated:
            members = block.members if isinstance(block, Block) else self.host.blocks[block]
            if x not in members:
                raise ValueError(f"designated element {x} is not in its block")


@dataclass(frozen=True)
class WorldReport:
    block: Block | int
    element: int
    witness: int  # the atom the world's valuation sends to 1
    satisfiable: bool


@dataclass(frozen=True)
class MWIReport:
    worlds: tuple[WorldReport, ...]
    joint: GlobalValuation | KSResult | None

    @property
    def all_worlds_satisfiable(self) -> bool:
        return all(w.satisfiable for w in self.worlds)

    @property
    def jointly_satisfiable(self) -> bool:
        if isinstance(self.joint, KSResult):
            return self.joint.found
        return self.joint is not None


def mwi_family_check(W: MWIFamily) -> MWIReport:
    """Each world on its own, then all designations inside one global valuation."""
    if isinstance(W.host, ContextHypergraph):
        H = W.host
        worlds = tuple(WorldReport(b, a, a, True) for b, a in W.designated)
        joint = hypergraph_assignment(H, true_atoms=sorted({a for _, a in W.designated}))
        return MWIReport(worlds, joint)

    L = W.host
    worlds = []
    for B, x in W.designated:
        if x == L.bottom:
            raise ZeroDesignated("0 cannot be sent to 1 by any valuation")
        p = next(a for a in B.atoms if L.leq[a][x])
        v = valuation_at_atom(B, p)
        worlds.append(WorldReport(B, x, p, v(x) == 1))
    joint = find_global_valuation(L, {x: 1 for _, x in W.designated})
    return MWIReport(tuple(worlds), joint)


def one_per_block(host: FiniteOrtholattice | ContextHypergraph) -> MWIFamily:
    """Designate one atom per block, preferring atoms no earlier block has taken."""
    if isinstance(host, ContextHypergraph):
        atom_sets = [sorted(b) for b in host.blocks]
    else:
        blocks = maximal_blocks(host)
        atom_sets = [list(B.atoms) for B in blocks]
    used: set[int] = set()
    picks = []
    for atoms in atom_sets:
        p = next((a for a in atoms if a not in used), atoms[0])
        used.add(p)
        picks.append(p)
    if isinstance(host, ContextHypergraph):
        return MWIFamily(host, tuple(enumerate(picks)))
    return MWIFamily(host, tuple(zip(blocks, picks)))
