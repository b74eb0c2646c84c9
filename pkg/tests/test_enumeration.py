from __future__ import annotations

from itertools import product as iproduct

import pytest

import rsg
from rsg import (
    SizeLimit,
    canonical_form,
    enumerate_premorphisms,
    enumerate_proper_extensions,
    enumerate_restriction_semigroups,
    enumerate_semilattices,
    is_proper_morphism,
)
from rsg.enumeration import order_ideal_isos


def _semilattice_tables_by_filter(n):
    """Independent oracle: scan symmetric idempotent tables directly."""
    cells = [(i, j) for i in range(n) for j in range(i + 1, n)]
    out = []
    for choice in iproduct(range(n), repeat=len(cells)):
        meet = [[i if i == j else -1 for j in range(n)] for i in range(n)]
        for (i, j), v in zip(cells, choice):
            meet[i][j] = meet[j][i] = v
        if all(meet[meet[a][b]][c] == meet[a][meet[b][c]]
               for a in range(n) for b in range(n) for c in range(n)):
            out.append(tuple(tuple(row) for row in meet))
    return out


@pytest.mark.parametrize("n,iso_count", [(1, 1), (2, 1), (3, 2), (4, 5)])
def test_semilattice_counts(n, iso_count):
    labeled = list(enumerate_semilattices(n))
    iso = list(enumerate_semilattices(n, up_to_iso=True))
    assert len(iso) == iso_count
    oracle = _semilattice_tables_by_filter(n)
    assert sorted(y.meet for y in labeled) == sorted(oracle)


def test_semilattice_iso_stream_covers_all_classes():
    labeled = list(enumerate_semilattices(4))
    iso = list(enumerate_semilattices(4, up_to_iso=True))
    reps = [rsg.semilattice_as_rsemigroup(y) for y in iso]
    for i, a in enumerate(reps):
        for b in reps[i + 1:]:
            assert not rsg.are_isomorphic(a, b)
    for y in labeled:
        s = rsg.semilattice_as_rsemigroup(y)
        assert any(rsg.are_isomorphic(s, r) for r in reps)


def test_restriction_semigroup_counts(rs_labeled_upto4, rs_iso_upto4):
    assert len(rs_labeled_upto4[1]) == 1
    assert len(rs_labeled_upto4[2]) == 6
    assert len(rs_iso_upto4[2]) == 3
    # order two: the chain semilattice, the reduced idempotent monoid,
    # and the two-element group
    y2 = rsg.validate_restriction(2, ((0, 0), (0, 1)), (0, 1), (0, 1))
    sa = rsg.validate_restriction(2, ((0, 1), (1, 1)), (0, 0), (0, 0))
    c2 = rsg.validate_restriction(2, ((0, 1), (1, 0)), (0, 0), (0, 0))
    for expected in (y2, sa, c2):
        assert any(rsg.are_isomorphic(expected, S) for S in rs_iso_upto4[2])


def test_enumerated_all_pass_independent_validation(rs_labeled_upto4):
    # feed the raw tables back through the validator
    for n in (1, 2, 3):
        for S in rs_labeled_upto4[n]:
            again = rsg.validate_restriction(S.n, S.mul, S.star, S.plus)
            assert again.mul == S.mul


def test_iso_stream_is_irredundant_and_complete(rs_labeled_upto4, rs_iso_upto4):
    for n in (1, 2, 3, 4):
        reps = rs_iso_upto4[n]
        keys = {canonical_form(S) for S in reps}
        assert len(keys) == len(reps)
        assert {canonical_form(S) for S in rs_labeled_upto4[n]} == keys


def test_count_limit_guard():
    with pytest.raises(SizeLimit):
        list(enumerate_restriction_semigroups(3, count_limit=5))


def test_premorphism_enumeration_trivial_source(triv):
    phis = list(enumerate_premorphisms(triv, 1))
    # direct check over both candidate maps: the identity and the empty
    # map are the partial identities, and both satisfy the conditions
    assert len(phis) == 2
    maps = {phi.maps[0] for phi in phis}
    assert maps == {rsg.PBij.identity(1), rsg.PBij.empty(1)}


def test_premorphism_enumeration_against_brute_force(sa, y2):
    from rsg.partial_maps import pbij_elements
    for S in (sa, y2):
        fast = {tuple(phi.maps) for phi in enumerate_premorphisms(S, 2)}
        brute = set()
        for maps in iproduct(pbij_elements(2), repeat=S.n):
            pm1 = all(maps[s].compose(maps[t]).le(maps[S.mul[s][t]])
                      for s in range(S.n) for t in range(S.n))
            pm2 = all(maps[s].star_map().le(maps[S.star[s]])
                      for s in range(S.n))
            pm3 = all(maps[s].plus_map().le(maps[S.plus[s]])
                      for s in range(S.n))
            if pm1 and pm2 and pm3:
                brute.add(tuple(maps))
        assert fast == brute


def test_premorphism_enumeration_brute_force_carrier3(sa):
    from rsg.partial_maps import pbij_elements
    fast = {tuple(phi.maps) for phi in rsg.enumerate_premorphisms(sa, 3)}
    brute = set()
    for maps in iproduct(pbij_elements(3), repeat=2):
        pm1 = all(maps[s].compose(maps[t]).le(maps[sa.mul[s][t]])
                  for s in range(2) for t in range(2))
        pm2 = all(maps[s].star_map().le(maps[sa.star[s]]) for s in range(2))
        pm3 = all(maps[s].plus_map().le(maps[sa.plus[s]]) for s in range(2))
        if pm1 and pm2 and pm3:
            brute.add(tuple(maps))
    assert fast == brute


def test_action_triple_enumeration_brute_force(sa, s3):
    # generate-and-filter over every map assignment, anchor map and
    # semilattice, then compare against the pruned search
    from rsg.partial_maps import pbij_elements
    from rsg.enumeration import semilattices
    from rsg.errors import PMViolation, NotSemilatticeMorphism

    for S in (sa, s3):
        fast = {(t.lattice.meet, t.q, tuple(t.phi.maps))
                for t in rsg.enumerate_action_triples(S, 2)}
        brute = set()
        for m in (1, 2):
            for Y in semilattices(m):
                for q in iproduct(S.projections, repeat=Y.n):
                    for maps in iproduct(pbij_elements(Y.n), repeat=S.n):
                        try:
                            phi = rsg.check_premorphism(S, Y.n, maps)
                            trip = rsg.action_triple(phi, q, Y)
                        except (PMViolation, NotSemilatticeMorphism):
                            continue
                        flags = rsg.check_action_conditions(trip)
                        if flags.all_a1_a4():
                            brute.add((Y.meet, q, maps))
        assert fast == brute


def test_premorphism_enumeration_contains_fixture(sa, say2_triple):
    fast = {tuple(phi.maps) for phi in enumerate_premorphisms(sa, 2)}
    assert tuple(say2_triple.phi.maps) in fast


def test_premorphism_filter_strong_on_inverse_source(i2):
    c2 = rsg.from_inverse(((0, 1), (1, 0)), (0, 1))
    for phi in enumerate_premorphisms(c2, 2, filters=("strong",)):
        rep = rsg.classify(phi)
        assert rep.inverse_preserving is True


def test_extension_enumeration_trivial(triv):
    exts = list(enumerate_proper_extensions(1, triv))
    assert len(exts) == 1 and exts[0].psi.map == (0,)


def test_extension_enumeration_y2_collapse(triv):
    exts = list(enumerate_proper_extensions(2, triv))
    # exactly the two-chain collapsing onto the point; reduced monoids
    # of order two are not proper over the point
    assert len(exts) == 1
    T = exts[0].total
    assert len(T.projections) == 2


def test_extension_enumeration_cross_checked(sa):
    for e in enumerate_proper_extensions(3, sa):
        # re-derive properness from the definition alone
        T, mapping = e.total, e.psi.map
        for s in range(T.n):
            for t in range(T.n):
                if mapping[s] == mapping[t]:
                    assert rsg.compatible(T, s, t)
        assert is_proper_morphism(e.psi)


def test_order_ideal_isos(vee, y2_lattice):
    # downsets of the vee: {}, {0}, {0,1}, {0,2}, all; isos between
    # equal-shaped ones
    isos = order_ideal_isos(vee)
    assert rsg.PBij.from_pairs(3, [(0, 0), (1, 2)]) in isos
    assert rsg.PBij.empty(3) in isos
    # empty, bottom, four maps between the two chains, two automorphisms
    assert len(isos) == 8
    assert len([f for f in isos if f.is_partial_identity()]) == 5
    # the chain admits only the three partial identities on its downsets
    assert len(order_ideal_isos(y2_lattice)) == 3
