import itertools
import re
import warnings

import numpy as np
import pytest
from hypothesis import assume, given, settings
from hypothesis import strategies as st

from omlkit.boolean import maximal_blocks
from omlkit.catalog import CAB18_BASES, catalog, source_hypergraph
from omlkit.hypergraph import (
    BlocksOverlapTooMuch,
    ContextHypergraph,
    InvalidHypergraph,
    NotOrthomodularAfterPaste,
    hypergraph_assignment,
    hypergraph_assignments,
    parity_certificate,
    paste_greechie,
    short_loops,
)
from omlkit.lattice import boolean_algebra, check_orthomodular, horizontal_sum
from omlkit.valuation import find_global_valuation

import oracles


def ray(label):
    return np.array([int(t) for t in re.findall(r"-?\d", label)])


# -- fixtures ---------------------------------------------------------------------


def test_cab18_rays_form_orthogonal_bases():
    # [DERIVED] every basis is four mutually orthogonal nonzero vectors in R^4
    for basis in CAB18_BASES:
        vs = np.array([ray(r) for r in basis])
        gram = vs @ vs.T
        assert np.count_nonzero(gram - np.diag(np.diag(gram))) == 0
        assert np.linalg.matrix_rank(vs) == 4


def test_cab18_shape():
    H = catalog("cab18")
    assert H.atom_count == 18 and len(H.blocks) == 9
    assert all(len(b) == 4 for b in H.blocks)
    assert all(H.degree(a) == 2 for a in range(H.atom_count))


def test_odd13_shape():
    H = catalog("odd13")
    assert len(H.blocks) == 13 and all(H.degree(a) == 2 for a in range(H.atom_count))
    assert short_loops(H) == []


# -- exactly-one search ---------------------------------------------------------------


def test_two_blocks_sharing_an_atom():
    H = ContextHypergraph.from_names([["a", "b", "c"], ["c", "d", "e"]])
    r = hypergraph_assignment(H)
    assert r.found
    assert len(list(hypergraph_assignments(H))) == 5
    assert frozenset({2}) in set(hypergraph_assignments(H))


def test_single_block_has_one_assignment_per_atom():
    H = ContextHypergraph.from_names([["a", "b"]])
    assert sorted(map(sorted, hypergraph_assignments(H))) == [[0], [1]]


def test_cab18_has_no_assignment_and_a_parity_certificate():
    H = catalog("cab18")
    r = hypergraph_assignment(H)
    assert not r.found
    assert r.certificate is not None and r.certificate.valid_for(H)
    assert "9 blocks" in r.certificate.text()


def test_cab18_matches_bruteforce():
    # [DERIVED] all 2^18 colourings
    assert oracles.hypergraph_solutions(catalog("cab18")) == []


def test_forced_atoms():
    H = ContextHypergraph.from_names([["a", "b", "c"], ["c", "d", "e"]])
    a, d = H.labels.index("a"), H.labels.index("d")
    got = set(hypergraph_assignments(H, true_atoms=[a]))
    assert got == {frozenset({a, 3}), frozenset({a, 4})}
    assert set(hypergraph_assignments(H, true_atoms=[a], false_atoms=[d])) == {frozenset({a, 4})}
    r = hypergraph_assignment(H, true_atoms=[a, 2])
    assert not r.found and r.certificate is None


def test_invalid_hypergraphs_are_rejected():
    with pytest.raises(InvalidHypergraph):
        ContextHypergraph(2, ((0,),)).validate()
    with pytest.raises(InvalidHypergraph):
        ContextHypergraph(3, ((0, 1),)).validate()


@st.composite
def hypergraphs(draw, max_atoms=10, max_blocks=5):
    n = draw(st.integers(2, max_atoms))
    k = draw(st.integers(1, max_blocks))
    blocks = [
        tuple(sorted(draw(st.sets(st.integers(0, n - 1), min_size=2, max_size=min(n, 4)))))
        for _ in range(k)
    ]
    used = sorted({a for b in blocks for a in b})
    relabel = {a: i for i, a in enumerate(used)}
    return ContextHypergraph(len(used), tuple(tuple(relabel[a] for a in b) for b in blocks))


@settings(max_examples=150, deadline=None)
@given(hypergraphs())
def test_search_matches_bruteforce(H):
    with warnings.catch_warnings():
        warnings.simplefilter("ignore")
        got = set(hypergraph_assignments(H))
    assert got == set(oracles.hypergraph_solutions(H))


@settings(max_examples=150, deadline=None)
@given(hypergraphs())
def test_parity_certificate_is_sound(H):
    cert = parity_certificate(H)
    if cert is not None:
        assert oracles.hypergraph_solutions(H) == []


# -- pasting -----------------------------------------------------------------------


def test_two_disjoint_pairs_paste_to_mo2():
    L = paste_greechie(ContextHypergraph.from_names([["a", "na"], ["b", "nb"]]))
    assert oracles.isomorphic(L, horizontal_sum(2))


def test_single_triple_pastes_to_eight_elements():
    L = paste_greechie(ContextHypergraph.from_names([["a", "b", "c"]]))
    assert oracles.isomorphic(L, boolean_algebra(3))


def test_two_triples_sharing_one_atom():
    # [DERIVED] 2 bounds + 3 atoms each side sharing c + their complements sharing ¬c
    L = catalog("g2shared")
    assert len(L) == 12
    assert check_orthomodular(L) is None
    assert len(maximal_blocks(L)) == 2
    assert L.neg(L.index("c")) == L.index("a+b")


def test_cab18_pasting_fails_with_a_short_loop():
    with pytest.raises(NotOrthomodularAfterPaste) as info:
        paste_greechie(catalog("cab18"))
    loop = info.value.loop
    assert loop is not None and len(loop.blocks) == 3
    assert "loop of order 3" in str(info.value)


def test_heavy_overlap_is_rejected():
    H = ContextHypergraph.from_names([["a", "b", "c"], ["a", "b", "d"]])
    with warnings.catch_warnings():
        warnings.simplefilter("ignore")
        with pytest.raises(BlocksOverlapTooMuch):
            paste_greechie(H)


@pytest.mark.parametrize("blocks", [[["a", "b"], ["a", "c"]], [["a", "b"], ["a", "c", "d"]]])
def test_pasting_that_would_merge_atoms_is_rejected(blocks):
    # a two-atom block makes its partner the complement of the shared atom everywhere
    with pytest.raises(InvalidHypergraph):
        paste_greechie(ContextHypergraph.from_names(blocks))


def test_odd13_pastes_to_an_oml_without_valuations():
    H = source_hypergraph("odd13oml")
    L = catalog("odd13oml")
    assert len(maximal_blocks(L)) == len(H.blocks)
    assert find_global_valuation(L) is None
    assert parity_certificate(H) is not None


@st.composite
def two_block_hypergraphs(draw, max_atoms=12):
    s1 = draw(st.integers(2, 6))
    s2 = draw(st.integers(2, 6))
    shared = draw(st.integers(0, 1))
    assume(s1 + s2 - shared <= max_atoms)
    assume(not shared or min(s1, s2) >= 3)
    first = list(range(s1))
    second = first[:shared] + list(range(s1, s1 + s2 - shared))
    return ContextHypergraph(s1 + s2 - shared, (tuple(first), tuple(second)))


@settings(max_examples=60, deadline=None)
@given(two_block_hypergraphs())
def test_layers_agree_on_pasted_lattices(H):
    L = paste_greechie(H)
    lattice_side = find_global_valuation(L) is not None
    assert hypergraph_assignment(H).found == lattice_side
    assert len(maximal_blocks(L)) == 2


def test_layers_agree_on_exhaustive_small_pastings():
    # every pasting of up to three blocks of size 2 or 3 on at most 7 atoms that succeeds
    checked = 0
    for k in (1, 2, 3):
        pool = [c for s in (2, 3) for c in itertools.combinations(range(7), s)]
        for blocks in itertools.combinations(pool, k):
            used = sorted({a for b in blocks for a in b})
            if used != list(range(len(used))):
                continue
            H = ContextHypergraph(len(used), blocks)
            if H.heavy_overlaps():
                continue
            try:
                L = paste_greechie(H)
            except (NotOrthomodularAfterPaste, InvalidHypergraph):
                continue
            assert hypergraph_assignment(H).found == (find_global_valuation(L) is not None)
            checked += 1
    assert checked > 50
