"""Named fixtures: small lattices and context hypergraphs used by tests and the CLI."""

from __future__ import annotations

from functools import lru_cache

from .hypergraph import ContextHypergraph, paste_greechie
from .lattice import FiniteOrtholattice, boolean_algebra, build_from_covers, horizontal_sum, product


class UnknownFixture(LookupError):
    pass


# Cabello's 18 rays in R^4, nine orthogonal bases; each ray lies in two bases.
CAB18_BASES = (
    ("0001", "0010", "1100", "1-100"),
    ("0001", "0100", "1010", "10-10"),
    ("1-11-1", "1-1-11", "1100", "0011"),
    ("1-11-1", "1111", "10-10", "010-1"),
    ("0010", "0100", "1001", "100-1"),
    ("1-1-11", "1111", "100-1", "01-10"),
    ("11-11", "111-1", "1-100", "0011"),
    ("11-11", "1-1-1-1", "1010", "010-1"),
    ("111-1", "1-1-1-1", "1001", "01-10"),
)

# 13 vertices, girth 5, degrees 3 and 4. Vertices become blocks and edges
# atoms, so every atom sits in two blocks and the pasting has no loop of
# order below 5; an odd vertex count rules out an exactly-one selection.
ODD13_EDGES = (
    (0, 2), (0, 5), (0, 8), (0, 10), (1, 7), (1, 8), (1, 9), (2, 6), (2, 9), (3, 8), (3, 11),
    (3, 12), (4, 5), (4, 6), (4, 11), (5, 12), (6, 7), (7, 10), (7, 12), (9, 11), (10, 11),
)


def _o6() -> FiniteOrtholattice:
    labels = ["0", "a", "b", "nb", "na", "1"]
    covers = [("0", "a"), ("a", "b"), ("b", "1"), ("0", "nb"), ("nb", "na"), ("na", "1")]
    return build_from_covers(covers, [("0", "1"), ("a", "na"), ("b", "nb")], labels)


def _cab18() -> ContextHypergraph:
    return ContextHypergraph.from_names(CAB18_BASES)


def _odd13() -> ContextHypergraph:
    atoms = [f"e{u}_{v}" for u, v in ODD13_EDGES]
    blocks = [[f"e{u}_{v}" for u, v in ODD13_EDGES if w in (u, v)] for w in range(13)]
    return ContextHypergraph.from_names(blocks, atoms)


def _g2shared_hypergraph() -> ContextHypergraph:
    return ContextHypergraph.from_names([["a", "b", "c"], ["c", "d", "e"]])


_HYPERGRAPHS = {
    "cab18": _cab18,
    "odd13": _odd13,
    "g2shared": _g2shared_hypergraph,
    "odd13oml": _odd13,
}

_LATTICES = {
    "b2": lambda: boolean_algebra(1),
    "b4": lambda: boolean_algebra(2),
    "b8": lambda: boolean_algebra(3),
    "b16": lambda: boolean_algebra(4),
    "mo2": lambda: horizontal_sum(2),
    "mo3": lambda: horizontal_sum(3),
    "o6": _o6,
    "mo2xb2": lambda: product(horizontal_sum(2), boolean_algebra(1)),
    "g2shared": lambda: paste_greechie(_g2shared_hypergraph()),
    "odd13oml": lambda: paste_greechie(_odd13()),
}

LATTICE_NAMES = tuple(_LATTICES)
HYPERGRAPH_NAMES = ("cab18", "odd13")
# Orthomodular lattice fixtures (o6 is the one non-OML).
OML_NAMES = tuple(n for n in LATTICE_NAMES if n != "o6")


@lru_cache(maxsize=None)
def catalog(name: str) -> FiniteOrtholattice | ContextHypergraph:
    if name in _LATTICES:
        return _LATTICES[name]()
    if name in HYPERGRAPH_NAMES:
        return _HYPERGRAPHS[name]()
    raise UnknownFixture(f"unknown fixture {name!r}; known: {', '.join(LATTICE_NAMES + HYPERGRAPH_NAMES)}")


def source_hypergraph(name: str) -> ContextHypergraph:
    """The hypergraph a pasted lattice fixture was built from."""
    if name not in _HYPERGRAPHS:
        raise UnknownFixture(f"{name!r} has no underlying hypergraph")
    return _HYPERGRAPHS[name]()
