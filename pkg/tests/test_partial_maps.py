from __future__ import annotations

import pytest
from hypothesis import given, strategies as st

import rsg
from rsg import (
    NotInverse,
    PBij,
    compatible,
    compatible_pbij,
    downset,
    from_inverse,
    munn_representation,
    munn_semigroup,
    projections,
    symmetric_inverse,
    validate_semilattice,
)
from rsg.partial_maps import join_pbij, munn_elements, pbij_elements

from laws import check_basic_laws


def _pbijs(carrier: int):
    return st.permutations(range(carrier)).flatmap(
        lambda img: st.sets(st.integers(0, carrier - 1), max_size=carrier).map(
            lambda dom: PBij(carrier, tuple(
                img[x] if x in dom else -1 for x in range(carrier)))))


@given(_pbijs(5), _pbijs(5), _pbijs(5))
def test_pbij_composition_associative(f, g, h):
    assert f.compose(g).compose(h) == f.compose(g.compose(h))


@given(_pbijs(5))
def test_pbij_star_plus(f):
    assert f.star_map() == f.inverse().compose(f)
    assert f.plus_map() == f.compose(f.inverse())
    assert f.compose(f.star_map()) == f
    assert f.plus_map().compose(f) == f
    assert f.star_map().dom == f.dom and f.plus_map().dom == f.ran


@given(_pbijs(4), _pbijs(4))
def test_pbij_restriction_order(f, g):
    assert f.le(g) == (f.dom <= g.dom and all(f(x) == g(x) for x in f.dom))


@given(_pbijs(4), _pbijs(4))
def test_pbij_compatibility_is_joinability(f, g):
    # the two defining equations amount to: the union is a partial
    # bijection (agreement on shared domain points and on shared range
    # points); agreement on the common domain alone is not enough
    assert compatible_pbij(f, g) == (join_pbij(f, g) is not None)


def test_domain_agreement_alone_is_weaker():
    f = PBij.from_pairs(2, [(0, 0)])
    g = PBij.from_pairs(2, [(1, 0)])
    assert all(f(x) == g(x) for x in f.dom & g.dom)  # vacuous agreement
    assert not compatible_pbij(f, g)                 # ranges collide


def test_compatible_implies_domain_agreement():
    for f in pbij_elements(3):
        for g in pbij_elements(3):
            if compatible_pbij(f, g):
                assert all(f(x) == g(x) for x in f.dom & g.dom)


def test_symmetric_inverse_sizes():
    assert symmetric_inverse(0).n == 1
    i1 = symmetric_inverse(1)
    assert i1.n == 2
    y2 = rsg.validate_restriction(2, ((0, 0), (0, 1)), (0, 1), (0, 1))
    assert rsg.are_isomorphic(i1, y2)
    i2 = symmetric_inverse(2)
    assert i2.n == 7 and len(projections(i2)) == 4
    assert symmetric_inverse(3).n == 34  # 1 + 9 + 18 + 6


def test_symmetric_inverse_size_limit():
    with pytest.raises(rsg.SizeLimit):
        symmetric_inverse(4, max_elements=100)


def test_canonical_element_order(i2):
    # domain bitmask then image tuple
    assert i2.labels == ("[]", "[0>0]", "[0>1]", "[1>0]", "[1>1]",
                         "[0>0,1>1]", "[0>1,1>0]")


def test_compat_in_ix_matches_table_relation(i2, i3):
    for S, k in ((i2, 2), (i3, 3)):
        elems = pbij_elements(k)
        for i, f in enumerate(elems):
            for j, g in enumerate(elems):
                assert compatible(S, i, j) == compatible_pbij(f, g)


def test_from_inverse_round_trip(i2):
    elems = pbij_elements(2)
    index = {f: i for i, f in enumerate(elems)}
    mul = [[index[f.compose(g)] for g in elems] for f in elems]
    inv = [index[f.inverse()] for f in elems]
    S = from_inverse(mul, inv)
    assert S.mul == i2.mul and S.star == i2.star and S.plus == i2.plus


def test_from_inverse_trivial_group():
    S = from_inverse(((0,),), (0,))
    assert S.n == 1 and projections(S) == (0,)


def test_from_inverse_two_chain(y2):
    S = from_inverse(((0, 0), (0, 1)), (0, 1))
    assert S.mul == y2.mul and S.star == y2.star


def test_from_inverse_rejects_left_zero():
    # both elements are mutual generalized inverses: not unique
    with pytest.raises(NotInverse) as exc:
        from_inverse(((0, 0), (1, 1)), (0, 1))
    assert exc.value.reason == "generalized inverse not unique"


def test_projections_equal_idempotents_for_inverse(i2, i3):
    for S in (i2, i3):
        idem = {s for s in range(S.n) if S.mul[s][s] == s}
        assert S.proj_set == idem
    c2 = from_inverse(((0, 1), (1, 0)), (0, 1))  # order-2 group
    assert projections(c2) == (0,)


def test_downset(y2_lattice, vee):
    assert downset(y2_lattice, ()) == frozenset()
    assert downset(y2_lattice, {1}) == {0, 1}
    assert downset(vee, {1}) == {0, 1}
    assert downset(vee, {1, 2}) == {0, 1, 2}
    # monotone and idempotent
    for Y in (y2_lattice, vee):
        for mask in range(1 << Y.n):
            b = {x for x in range(Y.n) if mask >> x & 1}
            d = downset(Y, b)
            assert b <= d or not b or all(x in d for x in b)
            assert downset(Y, d) == d
    for mask in range(1 << vee.n):
        for mask2 in range(mask, 1 << vee.n):
            b1 = {x for x in range(vee.n) if mask >> x & 1}
            b2 = {x for x in range(vee.n) if mask2 >> x & 1}
            if b1 <= b2:
                assert downset(vee, b1) <= downset(vee, b2)


def test_downset_four_element_scan():
    # the L shape: bottom < a < b plus an isolated atom c
    ell = validate_semilattice(4, ((0, 0, 0, 0), (0, 1, 1, 0),
                                   (0, 1, 2, 0), (0, 0, 0, 3)))
    assert downset(ell, {2}) == {0, 1, 2}
    assert downset(ell, {3}) == {0, 3}
    assert downset(ell, {1, 3}) == {0, 1, 3}


def test_munn_trivial():
    one = validate_semilattice(1, ((0,),))
    T = munn_semigroup(one)
    assert T.n == 1


def test_munn_two_chain(y2_lattice):
    T = munn_semigroup(y2_lattice)
    # only the two partial identities on the principal ideals
    assert T.n == 2
    assert all(f.is_partial_identity() for f in munn_elements(y2_lattice))


def test_munn_vee_contains_swap(vee):
    T = munn_semigroup(vee)
    assert T.n == 5
    elems = munn_elements(vee)
    swap = PBij.from_pairs(3, [(0, 0), (1, 2)])
    assert swap in elems and swap.inverse() in elems
    # no top element, so no identity element in the table
    assert vee.top is None
    assert not any(all(T.mul[e][x] == x == T.mul[x][e] for x in range(T.n))
                   for e in range(T.n))


def test_munn_monoid_iff_top(y2_lattice):
    T = munn_semigroup(y2_lattice)
    ident = [e for e in range(T.n)
             if all(T.mul[e][x] == x == T.mul[x][e] for x in range(T.n))]
    assert len(ident) == 1


def test_munn_closure(vee):
    elems = munn_elements(vee)
    eset = set(elems)
    for f in elems:
        assert f.inverse() in eset
        for g in elems:
            assert f.compose(g) in eset
    proj = {f for f in elems if f.is_partial_identity()}
    assert proj == {f for f in elems if f.dom == f.ran
                    and all(f(x) == x for x in f.dom)}


def test_munn_representation_trivial(triv):
    rep = munn_representation(triv)
    assert rep.target.n == 1


def test_munn_representation_y2(y2):
    rep = munn_representation(y2)
    # each projection acts as the identity on its own ideal
    from rsg.partial_maps import munn_pbij
    for s in range(y2.n):
        g = munn_pbij(y2, s)
        assert g.is_partial_identity()
        assert g.dom == {e for e in range(2) if y2.le(e, s)}


def test_munn_representation_i2(i2):
    rep = munn_representation(i2)
    assert rep.target.n == 7
    assert len(set(rep.map)) == i2.n  # faithful here


def test_munn_representation_enumerated(rs_iso_upto4):
    for n in (1, 2, 3, 4):
        for S in rs_iso_upto4[n]:
            munn_representation(S)  # raises if not a morphism


def test_munn_representation_order_five_and_six(extension_pool):
    seen = 0
    for e in extension_pool:
        if e.total.n in (5, 6):
            munn_representation(e.total)
            seen += 1
            if seen >= 40:
                break
    assert seen >= 40


def test_symmetric_inverse_lemma_suite(i2, i3):
    check_basic_laws(i2)
    check_basic_laws(i3)
