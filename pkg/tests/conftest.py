from __future__ import annotations

import os

import pytest

import rsg
from rsg.enumeration import restriction_semigroups

FIXTURES = os.path.join(os.path.dirname(__file__), "fixtures")
GOLDEN = os.path.join(os.path.dirname(__file__), "golden")


def fixture_path(name: str) -> str:
    return os.path.join(FIXTURES, name)


@pytest.fixture(scope="session")
def triv():
    return rsg.trivial_monoid()


@pytest.fixture(scope="session")
def y2():
    return rsg.validate_restriction(2, ((0, 0), (0, 1)), (0, 1), (0, 1),
                                    labels=("x", "y"))


@pytest.fixture(scope="session")
def y2_lattice():
    return rsg.validate_semilattice(2, ((0, 0), (0, 1)))


@pytest.fixture(scope="session")
def sa():
    return rsg.validate_restriction(2, ((0, 1), (1, 1)), (0, 0), (0, 0),
                                    labels=("1", "a"))


@pytest.fixture(scope="session")
def i2():
    return rsg.symmetric_inverse(2)


@pytest.fixture(scope="session")
def i3():
    return rsg.symmetric_inverse(3)


@pytest.fixture(scope="session")
def say2_triple(sa, y2_lattice):
    phi = rsg.check_premorphism(
        sa, 2, (rsg.PBij.identity(2), rsg.PBij.partial_identity(2, [0])))
    return rsg.action_triple(phi, (0, 0), y2_lattice)


@pytest.fixture(scope="session")
def prod3(say2_triple):
    return rsg.partial_action_product(say2_triple)


@pytest.fixture(scope="session")
def s3(prod3):
    # the 3-element proper non-reduced, non-semilattice fixture
    return prod3.algebra


@pytest.fixture(scope="session")
def vee():
    # bottom with two incomparable atoms
    return rsg.validate_semilattice(3, ((0, 0, 0), (0, 1, 0), (0, 0, 2)))


@pytest.fixture(scope="session")
def rs_labeled_upto4():
    return {n: list(rsg.enumerate_restriction_semigroups(n))
            for n in (1, 2, 3, 4)}


@pytest.fixture(scope="session")
def rs_iso_upto4():
    return {n: restriction_semigroups(n) for n in (1, 2, 3, 4)}


@pytest.fixture(scope="session")
def triple_pool():
    """Action triples with the construction conditions, sources of order
    at most 3 (one per isomorphism class), carriers at most 4."""
    pool = []
    for n in (1, 2, 3):
        for S in restriction_semigroups(n):
            pool.extend(rsg.enumerate_action_triples(S, 4))
    return pool


@pytest.fixture(scope="session")
def extension_pool(triple_pool):
    """Proper extensions: direct enumeration onto small bases for totals
    of order at most 4, plus the projections of every enumerated action
    product with at most 6 elements."""
    pool = []
    for so in (1, 2, 3):
        for S in restriction_semigroups(so):
            for to in range(so, 5):
                pool.extend(rsg.enumerate_proper_extensions(to, S))
    for t in triple_pool:
        p = rsg.partial_action_product(t)
        if p.algebra.n <= 6 and p.algebra.n > 4:
            pool.append(rsg.proper_extension(p.psi))
    return pool
