import itertools

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from omlkit.boolean import maximal_blocks
from omlkit.catalog import OML_NAMES, catalog
from omlkit.lattice import atoms, boolean_algebra, center
from omlkit.modal import (
    Infeasible,
    NotOrthomodular,
    check_posspace_extension,
    check_s_axioms,
    common_complement_lemma,
    cons_bruteforce,
    cons_closed_form,
    many_worlds_valuation,
    possibility_space,
    saturate,
)

import oracles
from conftest import SMALL_OMLS


def names(L, xs):
    return {L.labels[x] for x in xs}


def ix(L, *labels):
    return [L.index(s) for s in labels]


# -- saturation ------------------------------------------------------------------


def test_diamond_is_identity_on_boolean_algebras():
    for n in range(1, 5):
        M = saturate(boolean_algebra(n))
        assert list(M.diamond_map) == list(M.base.elements)
        assert list(M.box_map) == list(M.base.elements)


def test_diamond_on_mo2(mo2):
    M = saturate(mo2)
    assert M.diamond(mo2.bottom) == mo2.bottom
    for a in atoms(mo2):
        assert M.diamond(a) == mo2.top
    assert all(M.box(x) == (mo2.top if x == mo2.top else mo2.bottom) for x in mo2.elements)


def test_diamond_on_mo2xb2(mo2xb2):
    M = saturate(mo2xb2)
    a0, one0 = ix(mo2xb2, "(a,0)", "(1,0)")
    assert M.diamond(a0) == one0


def test_saturate_refuses_non_orthomodular_input():
    with pytest.raises(NotOrthomodular):
        saturate(catalog("o6"))


@pytest.mark.parametrize("name", OML_NAMES)
def test_diamond_is_the_least_central_upper_bound(name):
    # [DERIVED] minimum of the central upper bounds, found by order comparisons alone
    L = catalog(name)
    M = saturate(L)
    Z = oracles.commuting_center(L) if len(L) <= 24 else center(L)
    for a in L.elements:
        ups = [z for z in Z if L.leq[a][z]]
        least = [z for z in ups if all(L.leq[z][w] for w in ups)]
        assert [M.diamond(a)] == least
        assert M.diamond(M.diamond(a)) == M.diamond(a)
        assert M.box(a) == L.neg(M.diamond(L.neg(a)))


@settings(max_examples=200, deadline=None)
@given(st.sampled_from(OML_NAMES), st.data())
def test_diamond_is_monotone(name, data):
    L = catalog(name)
    M = saturate(L)
    x = data.draw(st.integers(0, len(L) - 1))
    y = data.draw(st.integers(0, len(L) - 1))
    if L.le(x, y):
        assert L.le(M.diamond(x), M.diamond(y))
    assert L.le(x, M.diamond(x)) and L.le(M.box(x), x)


# -- S axioms --------------------------------------------------------------------


@pytest.mark.parametrize("name", OML_NAMES)
def test_all_s_axioms_hold(name):
    report = check_s_axioms(saturate(catalog(name)))
    assert set(report) == {f"S{i}" for i in range(1, 8)}
    assert all(w is None for w in report.values())


def test_noncentral_diamond_breaks_s5(mo2):
    M = saturate(mo2)
    a = mo2.index("a")
    bad = M.with_diamond(a, a)  # a is not central
    report = check_s_axioms(bad)
    w = report["S5"]
    assert w is not None
    x, y = w.elements
    # [DERIVED] y ≠ (y ∧ □x) ∨ (y ∧ ¬□x) recomputed from the tables
    bx = bad.box(x)
    assert y != mo2.join(mo2.meet(y, bx), mo2.meet(y, mo2.neg(bx)))


@pytest.mark.parametrize("name", ["b4", "mo2", "mo3", "mo2xb2", "g2shared"])
def test_every_single_corruption_is_detected(name):
    # Any change to one nonzero ◇ value is caught by some axiom.
    L = catalog(name)
    M = saturate(L)
    for x in L.elements:
        for v in L.elements:
            if v == M.diamond(x) or x == L.bottom:
                continue
            report = check_s_axioms(M.with_diamond(x, v))
            assert any(w is not None for w in report.values()), (L.labels[x], L.labels[v])


# -- possibility space ------------------------------------------------------------


def test_possibility_space_examples(mo2, mo2xb2):
    b8 = boolean_algebra(3)
    assert possibility_space(saturate(b8)).members == frozenset(b8.elements)
    assert names(mo2, possibility_space(saturate(mo2)).members) == {"0", "1"}
    assert possibility_space(saturate(mo2xb2)).members == center(mo2xb2)


@pytest.mark.parametrize("name", OML_NAMES)
def test_blocks_extend_with_the_possibility_space(name):
    L = catalog(name)
    M = saturate(L)
    assert check_posspace_extension(M, frozenset({L.bottom, L.top})) is None
    for B in maximal_blocks(L):
        assert check_posspace_extension(M, B) is None


# -- classical consequence -----------------------------------------------------------


def test_cons_examples(mo2, b4, mo2xb2):
    M = saturate(mo2)
    a = mo2.index("a")
    assert names(mo2, cons_bruteforce(M, a)) == {"1"}
    assert names(mo2, cons_bruteforce(M, mo2.top)) == {"1"}
    assert cons_bruteforce(M, mo2.bottom) == possibility_space(M).members
    Mb = saturate(b4)
    assert names(b4, cons_closed_form(Mb, b4.index("a"))) == {"a", "1"}
    assert names(b4, cons_bruteforce(Mb, b4.index("a"))) == {"a", "1"}
    Mp = saturate(mo2xb2)
    p = mo2xb2.index("(a,0)")
    assert names(mo2xb2, cons_closed_form(Mp, p)) == {"(1,0)", "(1,1)"}
    assert cons_bruteforce(Mp, p) == cons_closed_form(Mp, p)


@pytest.mark.parametrize("name", SMALL_OMLS)
def test_cons_methods_agree(name):
    L = catalog(name)
    M = saturate(L)
    for p in L.elements:
        if p != L.bottom:
            assert cons_bruteforce(M, p) == cons_closed_form(M, p)


# -- common complements --------------------------------------------------------------


def test_common_complements(mo2, b4):
    r = common_complement_lemma(saturate(mo2))
    assert r.atomistic and r.holds
    a, b, nb = ix(mo2, "a", "b", "nb")
    pair = next(p for p in r.pairs if {p.a, p.b} == {a, b})
    assert mo2.index("na") in pair.common_complements and pair.diamond_equal
    rb = common_complement_lemma(saturate(b4))
    (only,) = rb.pairs
    assert not only.common_complements and not only.diamond_equal and rb.holds


@pytest.mark.parametrize("name", OML_NAMES)
def test_common_complement_implication_on_catalog(name):
    L = catalog(name)
    r = common_complement_lemma(saturate(L))
    assert r.holds
    if center(L) == {L.bottom, L.top}:
        assert all(p.diamond_equal for p in r.pairs)


# -- many worlds ---------------------------------------------------------------------


def test_many_worlds_examples(mo2, b4, mo2xb2):
    v = many_worlds_valuation(saturate(mo2), ix(mo2, "a", "b"))
    assert v(mo2.top) == 1
    bad = many_worlds_valuation(saturate(b4), ix(b4, "a", "b"))
    assert isinstance(bad, Infeasible)
    assert bad.meet == b4.bottom
    assert names(b4, bad.witness) == {"a", "b"}
    Mp = saturate(mo2xb2)
    fam = ix(mo2xb2, "(a,0)", "(b,1)")
    w = many_worlds_valuation(Mp, fam)
    assert not isinstance(w, Infeasible)
    assert names(mo2xb2, [Mp.diamond(p) for p in fam]) == {"(1,0)", "(1,1)"}
    assert all(w(Mp.diamond(p)) == 1 for p in fam)


@pytest.mark.parametrize("name", ["b4", "b8", "mo2", "mo3", "mo2xb2", "g2shared"])
def test_many_worlds_on_every_family(name):
    # [DERIVED] feasibility decided independently by the meet of all ◇-values
    L = catalog(name)
    M = saturate(L)
    nonzero = [x for x in L.elements if x != L.bottom]
    for k in (1, 2, 3):
        for fam in itertools.combinations(nonzero, k):
            out = many_worlds_valuation(M, fam)
            meet = L.meet_all(M.diamond(p) for p in fam)
            if meet == L.bottom:
                assert isinstance(out, Infeasible)
                assert L.meet_all(M.diamond(p) for p in out.witness) == L.bottom
            else:
                assert all(out(M.diamond(p)) == 1 for p in fam)
