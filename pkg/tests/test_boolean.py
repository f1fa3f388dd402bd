import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from omlkit.boolean import (
    Block,
    NotSeparable,
    ImproperFilter,
    as_block,
    boolean_subalgebras,
    enumerate_two_valuations,
    extend_to_maximal,
    generated_filter,
    is_filter,
    is_homomorphism,
    maximal_blocks,
    principal_filter,
    quotient,
    separating_maximal_filter,
    valuation_from_filter,
)
from omlkit.catalog import catalog
from omlkit.lattice import LatticeError, boolean_algebra, center, generated_sublattice

import oracles
from conftest import SMALL_OMLS


def whole(L):
    return as_block(L, L.elements)


def names(L, xs):
    return {L.labels[x] for x in xs}


# -- blocks ----------------------------------------------------------------------


def test_boolean_algebra_is_its_own_block(b8):
    assert [B.members for B in maximal_blocks(b8)] == [frozenset(b8.elements)]


def test_mo2_has_two_blocks(mo2):
    got = sorted(sorted(B.names()) for B in maximal_blocks(mo2))
    assert got == [["0", "1", "a", "na"], ["0", "1", "b", "nb"]]


def test_mo2xb2_blocks_meet_in_the_center(mo2xb2):
    blocks = maximal_blocks(mo2xb2)
    assert [len(B) for B in blocks] == [8, 8]
    assert blocks[0].members & blocks[1].members == center(mo2xb2)


def test_non_orthomodular_input_is_refused():
    with pytest.raises(LatticeError):
        maximal_blocks(catalog("o6"))


@pytest.mark.parametrize("name", SMALL_OMLS)
def test_maximal_blocks_match_subset_enumeration(name):
    # [DERIVED] maximal members of the brute-force family of Boolean subsets
    L = catalog(name)
    brute = oracles.boolean_subalgebras(L)
    assert {B.members for B in boolean_subalgebras(L)} == set(brute)
    assert {B.members for B in maximal_blocks(L)} == set(oracles.maximal_sets(brute))


@pytest.mark.parametrize("name", SMALL_OMLS)
def test_blocks_cannot_grow(name):
    L = catalog(name)
    for B in maximal_blocks(L):
        B.verify()
        for x in set(L.elements) - B.members:
            grown = generated_sublattice(L, B.members | {x})
            assert oracles.is_closed_distributive(L, grown) is False


# -- filters ---------------------------------------------------------------------


def test_generated_filter_examples(b4, b8):
    B = whole(b4)
    a, na = b4.index("a"), b4.index("b")
    F = generated_filter(B, [a])
    assert names(b4, F.members) == {"a", "1"} and F.proper
    assert not generated_filter(B, [a, na]).proper
    assert generated_filter(B, [a, na]).members == B.members
    C = whole(b8)
    ab, bc = b8.index("ab"), b8.index("bc")
    m = b8.meet(ab, bc)
    assert generated_filter(C, [ab, bc]).members == {x for x in b8.elements if b8.le(m, x)}
    assert names(b8, generated_filter(C, []).members) == {"1"}


@pytest.mark.parametrize("name", ["b2", "b4", "b8", "b16", "mo2xb2"])
def test_generated_filter_is_least_filter_containing_generators(name):
    # [DERIVED] intersection of every filter containing X, filters enumerated by bitmask
    L = catalog(name)
    for B in maximal_blocks(L):
        fs = oracles.filters(L, B.members)
        for x in B.members:
            for y in B.members:
                X = {x, y}
                expected = frozenset.intersection(*[F for F in fs if X <= F])
                F = generated_filter(B, X)
                assert F.members == expected
                assert is_filter(B, F.members)


def test_is_filter_rejects_non_upsets(b4):
    B = whole(b4)
    assert not is_filter(B, {b4.index("a")})
    assert not is_filter(B, set())


# -- quotients ------------------------------------------------------------------


def test_quotient_by_principal_filter_at_atom(b4, b8):
    B = whole(b4)
    a, na = b4.index("a"), b4.index("b")
    q = quotient(B, principal_filter(B, a))
    assert len(q.classes) == 2
    one = q.hom(b4.top)
    assert q.hom(a) == one and q.hom(na) != one
    C = whole(b8)
    q8 = quotient(C, principal_filter(C, b8.index("b")))
    assert oracles.isomorphic(q8.algebra, boolean_algebra(1))


def test_quotient_by_trivial_filter_is_identity(b8):
    B = whole(b8)
    q = quotient(B, principal_filter(B, b8.top))
    assert len(q.classes) == len(B)
    assert oracles.isomorphic(q.algebra, b8)


def test_quotient_rejects_improper_filter(b4):
    B = whole(b4)
    with pytest.raises(ImproperFilter):
        quotient(B, principal_filter(B, b4.bottom))


@pytest.mark.parametrize("name", ["b4", "b8", "b16", "mo2", "mo3", "mo2xb2"])
def test_maximal_iff_two_classes(name):
    # [DERIVED] maximality compared with inclusion-maximality among brute-force proper filters
    L = catalog(name)
    for B in maximal_blocks(L):
        proper = [F for F in oracles.filters(L, B.members) if L.bottom not in F]
        maximal = {F for F in proper if not any(F < G for G in proper)}
        for F in proper:
            f = principal_filter(B, L.meet_all(F))
            assert f.members == F
            assert f.maximal == (F in maximal)


# -- extension and separation ------------------------------------------------------


def test_extend_examples(b4, b8):
    C = whole(b8)
    assert extend_to_maximal(C, principal_filter(C, b8.top)) == principal_filter(C, b8.index("a"))
    B = whole(b4)
    F = principal_filter(B, b4.index("a"))
    assert extend_to_maximal(B, F) == F
    ab = b8.index("ab")
    G = extend_to_maximal(C, generated_filter(C, [ab]))
    assert ab in G
    assert sum(1 for p in C.atoms if b8.le(p, ab) and p in G) == 1


def test_separate_examples(b4, b8):
    B = whole(b4)
    a, b = b4.index("a"), b4.index("b")
    assert separating_maximal_filter(B, a, b) == principal_filter(B, a)
    F = separating_maximal_filter(B, b4.top, b4.bottom)
    assert F.maximal
    with pytest.raises(NotSeparable):
        separating_maximal_filter(B, a, b4.top)


@settings(max_examples=200, deadline=None)
@given(st.sampled_from(["b4", "b8", "b16", "mo2xb2"]), st.data())
def test_extension_is_maximal_and_contains_the_start(name, data):
    L = catalog(name)
    B = data.draw(st.sampled_from(maximal_blocks(L)))
    x = data.draw(st.sampled_from(sorted(B.members - {L.bottom})))
    F = principal_filter(B, x)
    G = extend_to_maximal(B, F)
    assert F.members <= G.members and G.maximal


# -- two-valued homomorphisms ---------------------------------------------------------


def test_valuation_counts(mo2):
    assert len(enumerate_two_valuations(whole(boolean_algebra(1)))) == 1
    assert len(enumerate_two_valuations(whole(boolean_algebra(3)))) == 3
    B = as_block(mo2, [mo2.index(s) for s in ("0", "a", "na", "1")])
    assert len(enumerate_two_valuations(B)) == 2


@pytest.mark.parametrize("name", SMALL_OMLS)
def test_valuations_match_bruteforce_homomorphisms(name):
    # [DERIVED] all 2^|B| maps filtered by the homomorphism laws
    L = catalog(name)
    for B in maximal_blocks(L):
        if len(B) > 16:
            continue
        brute = oracles.homomorphisms(L, B.members)
        got = [dict(v.assignment) for v in enumerate_two_valuations(B)]
        assert sorted(map(sorted, map(dict.items, got))) == sorted(map(sorted, map(dict.items, brute)))
        assert all(is_homomorphism(B, v) for v in got)


@pytest.mark.parametrize("name", ["b4", "b8", "b16", "mo2xb2"])
def test_filter_valuation_duality(name):
    # Each maximal filter gives the valuation at its least element, and back.
    L = catalog(name)
    for B in maximal_blocks(L):
        for v in enumerate_two_valuations(B):
            F = principal_filter(B, v.atom)
            assert F.maximal
            assert valuation_from_filter(B, F) == v
            assert F.members == v.ones()


def test_block_equality_is_by_members(mo2):
    B = maximal_blocks(mo2)[0]
    assert Block(mo2, set(B.members)) == B
