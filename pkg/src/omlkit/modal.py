"""The possibility operator ◇ and necessity □ on finite orthomodular lattices.

A finite OML is complete, so ``◇a`` (the least central element above a)
always exists and the lattice serves as its own modal extension.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, replace
from functools import lru_cache
from typing import Callable, Sequence

from .boolean import (
    Block,
    TwoValuation,
    boolean_subalgebras,
    enumerate_two_valuations,
    extend_to_maximal,
    generated_filter,
    valuation_from_filter,
)
from .lattice import (
    FiniteOrtholattice,
    LatticeError,
    Witness,
    atoms,
    center,
    check_atomistic,
    check_boolean_subset,
    check_ortholattice,
    check_orthomodular,
    complements,
    generated_sublattice,
)


class NotOrthomodular(LatticeError):
    pass


class SaturationError(LatticeError):
    pass


@dataclass(frozen=True, eq=False)
class ModalLattice:
    base: FiniteOrtholattice
    center_set: frozenset[int]
    diamond_map: tuple[int, ...]
    box_map: tuple[int, ...]

    def diamond(self, x: int) -> int:
        return self.diamond_map[x]

    def box(self, x: int) -> int:
        return self.box_map[x]

    def with_diamond(self, x: int, value: int) -> "ModalLattice":
        """Copy with one ◇ value overwritten and □ rederived; no validation.

        Only meant for mutation tests of the axiom checker.
        """
        dm = list(self.diamond_map)
        dm[x] = value
        o = self.base.ortho
        return replace(self, diamond_map=tuple(dm), box_map=tuple(o[dm[o[y]]] for y in self.base.elements))


def saturate(L: FiniteOrtholattice) -> ModalLattice:
    """Compute ◇ as the meet of all central elements above each element."""
    bad = check_ortholattice(L) or check_orthomodular(L)
    if bad is not None:
        raise NotOrthomodular(bad.describe(L))
    Z = center(L)
    zs = sorted(Z)
    dm = []
    for a in L.elements:
        above = [z for z in zs if L.leq[a][z]]
        d = L.meet_all(above)
        if d not in Z or not L.leq[a][d] or not all(L.leq[d][z] for z in above):
            raise SaturationError(f"no least central element above {L.labels[a]}")
        dm.append(d)
    o = L.ortho
    M = ModalLattice(L, Z, tuple(dm), tuple(o[dm[o[x]]] for x in L.elements))
    for name, w in check_s_axioms(M).items():
        if w is not None:
            raise SaturationError(w.describe(L))
    return M


def _s_axioms(M: ModalLattice) -> dict[str, Callable[[int, int], bool]]:
    L = M.base
    m, j, o, b = L.meet_table, L.join_table, L.ortho, M.box_map
    le = L.leq
    return {
        "S1": lambda x, y: le[b[x]][x],
        "S2": lambda x, y: b[L.top] == L.top,
        "S3": lambda x, y: b[b[x]] == b[x],
        "S4": lambda x, y: b[m[x][y]] == m[b[x]][b[y]],
        "S5": lambda x, y: y == j[m[y][b[x]]][m[y][o[b[x]]]],
        "S6": lambda x, y: b[j[x][b[y]]] == j[b[x]][b[y]],
        "S7": lambda x, y: le[b[j[o[x]][m[y][x]]]][j[o[b[x]]][b[y]]],
    }


S_AXIOM_TEXT = {
    "S1": "□x ≤ x",
    "S2": "□1 = 1",
    "S3": "□□x = □x",
    "S4": "□(x ∧ y) = □x ∧ □y",
    "S5": "y = (y ∧ □x) ∨ (y ∧ ¬□x)",
    "S6": "□(x ∨ □y) = □x ∨ □y",
    "S7": "□(¬x ∨ (y ∧ x)) ≤ ¬□x ∨ □y",
}


def check_s_axioms(M: ModalLattice) -> dict[str, Witness | None]:
    """For each of S1..S7, None or the first failing pair ``(x, y)`` in index order."""
    report = {}
    elems = M.base.elements
    for name, law in _s_axioms(M).items():
        report[name] = next(
            (Witness(name, (x, y), S_AXIOM_TEXT[name]) for x in elems for y in elems if not law(x, y)),
            None,
        )
    return report


@dataclass(frozen=True)
class PossibilitySpace:
    host: ModalLattice
    members: frozenset[int]

    @property
    def block(self) -> Block:
        return Block(self.host.base, self.members)


@lru_cache(maxsize=256)
def possibility_space(M: ModalLattice) -> PossibilitySpace:
    """The Boolean sublattice generated by the ◇-image, checked Boolean and central."""
    L = M.base
    members = generated_sublattice(L, set(M.diamond_map))
    bad = check_boolean_subset(L, members)
    if bad is not None:
        raise SaturationError(f"possibility space is not Boolean: {bad.describe(L)}")
    if not members <= M.center_set:
        raise SaturationError("possibility space leaves the center")
    return PossibilitySpace(M, members)


def posspace_extension(M: ModalLattice, W: Block | frozenset[int]) -> frozenset[int]:
    members = W.members if isinstance(W, Block) else W
    return generated_sublattice(M.base, set(members) | possibility_space(M).members)


def check_posspace_extension(M: ModalLattice, W: Block | frozenset[int]) -> Witness | None:
    """Check that the sublattice generated by ``W`` and the possibility space is Boolean."""
    return check_boolean_subset(M.base, posspace_extension(M, W))


def cons_bruteforce(M: ModalLattice, p: int) -> frozenset[int]:
    """Classical consequences of p straight from the definition.

    Quantifies over every Boolean sublattice W containing p and every
    two-valued homomorphism of the algebra generated by W and the possibility
    space.
    """
    L = M.base
    pos = possibility_space(M).members
    cons = set(pos)
    for W in _subalgebras(L):
        if p not in W.members:
            continue
        ext = Block(L, generated_sublattice(L, W.members | pos))
        for v in enumerate_two_valuations(ext):
            if v(p) == 1:
                cons -= {x for x in cons if v(x) == 0}
    return frozenset(cons)


@lru_cache(maxsize=64)
def _subalgebras(L: FiniteOrtholattice) -> tuple[Block, ...]:
    return tuple(boolean_subalgebras(L))


def cons_closed_form(M: ModalLattice, p: int) -> frozenset[int]:
    L = M.base
    d = M.diamond_map[p]
    return frozenset(x for x in possibility_space(M).members if L.leq[d][x])


@dataclass(frozen=True)
class AtomPair:
    a: int
    b: int
    common_complements: frozenset[int]
    diamond_equal: bool

    @property
    def implication_holds(self) -> bool:
        return self.diamond_equal or not self.common_complements


@dataclass(frozen=True)
class CommonComplementReport:
    atomistic: bool
    pairs: tuple[AtomPair, ...]

    @property
    def holds(self) -> bool:
        return all(p.implication_holds for p in self.pairs)


def common_complement_lemma(M: ModalLattice) -> CommonComplementReport:
    """For each pair of distinct atoms: does a common complement force ◇a = ◇b?"""
    L = M.base
    ats = sorted(atoms(L))
    comp = {a: complements(L, a) for a in ats}
    pairs = tuple(
        AtomPair(a, b, comp[a] & comp[b], M.diamond_map[a] == M.diamond_map[b])
        for a, b in itertools.combinations(ats, 2)
    )
    return CommonComplementReport(check_atomistic(L) is None, pairs)


@dataclass(frozen=True)
class Infeasible:
    """No valuation sends every ◇p to 1: some subfamily has zero ◇-meet."""

    family: tuple[int, ...]
    witness: tuple[int, ...]
    witness_positions: tuple[int, ...]
    meet: int


def many_worlds_valuation(M: ModalLattice, family: Sequence[int]) -> TwoValuation | Infeasible:
    """A homomorphism on the possibility space sending every ◇pᵢ to 1.

    Built from the filter generated by the ◇pᵢ, extended to a maximal one.
    """
    family = tuple(family)
    if not family:
        raise ValueError("family must be nonempty")
    L = M.base
    space = possibility_space(M).block
    dias = [M.diamond_map[p] for p in family]
    F = generated_filter(space, dias)
    if not F.proper:
        for k in range(1, len(family) + 1):
            for pos in itertools.combinations(range(len(family)), k):
                if L.meet_all(dias[i] for i in pos) == L.bottom:
                    return Infeasible(family, tuple(family[i] for i in pos), pos, L.bottom)
    v = valuation_from_filter(space, extend_to_maximal(space, F))
    assert all(v(d) == 1 for d in dias)
    return v


def two_valuations_of_space(M: ModalLattice) -> list[TwoValuation]:
    return enumerate_two_valuations(possibility_space(M).block)
