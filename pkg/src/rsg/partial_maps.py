"""Partial bijections, finite semilattices, and the inverse semigroups
built from them (symmetric inverse monoid, Munn semigroup).

A PBij composes right-to-left: (f.compose(g))(x) = f(g(x)).  Viewed
inside a restriction semigroup, f* is the identity on dom f and f+ the
identity on ran f, and f <= g means f is a restriction of g.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cache, cached_property
from itertools import permutations

from .core import RSemigroup, RSMorphism, check_rsmorphism, validate_restriction
from .errors import AxiomViolation, DimensionMismatch, NotInverse, SizeLimit

UNDEF = -1


@dataclass(frozen=True)
class PBij:
    """A partial injective map on {0..carrier-1}, stored as a fixed-length
    image array with -1 for "undefined"."""

    carrier: int
    images: tuple[int, ...]

    def __post_init__(self):
        assert len(self.images) == self.carrier
        defined = [v for v in self.images if v != UNDEF]
        assert all(0 <= v < self.carrier for v in defined)
        assert len(set(defined)) == len(defined), "not injective"

    @classmethod
    def from_pairs(cls, carrier: int, pairs) -> "PBij":
        images = [UNDEF] * carrier
        for x, y in pairs:
            assert images[x] == UNDEF
            images[x] = y
        return cls(carrier, tuple(images))

    @classmethod
    def identity(cls, carrier: int) -> "PBij":
        return cls(carrier, tuple(range(carrier)))

    @classmethod
    def empty(cls, carrier: int) -> "PBij":
        return cls(carrier, (UNDEF,) * carrier)

    @classmethod
    def partial_identity(cls, carrier: int, subset) -> "PBij":
        sub = set(subset)
        return cls(carrier, tuple(x if x in sub else UNDEF for x in range(carrier)))

    def defined(self, x: int) -> bool:
        return self.images[x] != UNDEF

    def __call__(self, x: int) -> int:
        y = self.images[x]
        assert y != UNDEF
        return y

    @cached_property
    def dom(self) -> frozenset[int]:
        return frozenset(x for x, y in enumerate(self.images) if y != UNDEF)

    @cached_property
    def ran(self) -> frozenset[int]:
        return frozenset(y for y in self.images if y != UNDEF)

    def compose(self, other: "PBij") -> "PBij":
        """self after other."""
        assert self.carrier == other.carrier
        out = []
        for y in other.images:
            out.append(UNDEF if y == UNDEF else self.images[y])
        return PBij(self.carrier, tuple(out))

    def inverse(self) -> "PBij":
        out = [UNDEF] * self.carrier
        for x, y in enumerate(self.images):
            if y != UNDEF:
                out[y] = x
        return PBij(self.carrier, tuple(out))

    def star_map(self) -> "PBij":
        """The identity on dom self (= inverse composed after self)."""
        return PBij(self.carrier,
                    tuple(x if y != UNDEF else UNDEF
                          for x, y in enumerate(self.images)))

    def plus_map(self) -> "PBij":
        """The identity on ran self (= self composed after inverse)."""
        out = [UNDEF] * self.carrier
        for y in self.images:
            if y != UNDEF:
                out[y] = y
        return PBij(self.carrier, tuple(out))

    def le(self, other: "PBij") -> bool:
        """Restriction order: self = other on dom self."""
        return all(y == UNDEF or other.images[x] == y
                   for x, y in enumerate(self.images))

    def is_partial_identity(self) -> bool:
        return all(y == UNDEF or y == x for x, y in enumerate(self.images))

    def restrict_to(self, subset) -> "PBij":
        sub = set(subset)
        return PBij(self.carrier,
                    tuple(y if x in sub else UNDEF
                          for x, y in enumerate(self.images)))

    def dom_mask(self) -> int:
        return sum(1 << x for x in self.dom)

    def literal(self) -> str:
        pairs = [f"{x}>{y}" for x, y in enumerate(self.images) if y != UNDEF]
        return "[" + ",".join(pairs) + "]"


class PBijOps:
    """The operations of I(X) viewed as a restriction semigroup, for code
    that is generic over the target of a map."""

    @staticmethod
    def m(f: PBij, g: PBij) -> PBij:
        return f.compose(g)

    @staticmethod
    def st(f: PBij) -> PBij:
        return f.star_map()

    @staticmethod
    def pl(f: PBij) -> PBij:
        return f.plus_map()

    @staticmethod
    def le(f: PBij, g: PBij) -> bool:
        return f.le(g)


PBIJ_OPS = PBijOps()


def compatible_pbij(f: PBij, g: PBij) -> bool:
    """Compatibility in I(X): fg* = gf* and g+f = f+g."""
    return (f.compose(g.star_map()) == g.compose(f.star_map())
            and g.plus_map().compose(f) == f.plus_map().compose(g))


def join_pbij(f: PBij, g: PBij) -> PBij | None:
    """The union of f and g when it is again a partial bijection."""
    out = list(f.images)
    for x, y in enumerate(g.images):
        if y == UNDEF:
            continue
        if out[x] not in (UNDEF, y):
            return None
        out[x] = y
    ran = [v for v in out if v != UNDEF]
    if len(set(ran)) != len(ran):
        return None
    return PBij(f.carrier, tuple(out))


@dataclass(frozen=True)
class Semilattice:
    """A finite meet-semilattice as an n x n meet table."""

    n: int
    meet: tuple[tuple[int, ...], ...]

    def le(self, a: int, b: int) -> bool:
        return self.meet[a][b] == a

    @cached_property
    def top(self) -> int | None:
        for t in range(self.n):
            if all(self.le(a, t) for a in range(self.n)):
                return t
        return None

    @cached_property
    def bottom(self) -> int:
        for b in range(self.n):
            if all(self.le(b, a) for a in range(self.n)):
                return b
        raise AssertionError("meet-semilattice without bottom")

    def principal_ideal(self, e: int) -> frozenset[int]:
        return frozenset(a for a in range(self.n) if self.le(a, e))

    def is_downset(self, subset) -> bool:
        sub = set(subset)
        return all(a in sub
                   for b in sub for a in range(self.n) if self.le(a, b))

    @cached_property
    def downsets(self) -> tuple[frozenset[int], ...]:
        out = []
        for mask in range(1 << self.n):
            sub = frozenset(x for x in range(self.n) if mask >> x & 1)
            if self.is_downset(sub):
                out.append(sub)
        return tuple(out)


def validate_semilattice(n: int, meet) -> Semilattice:
    meet = tuple(tuple(row) for row in meet)
    if len(meet) != n or any(len(row) != n for row in meet):
        raise DimensionMismatch(f"meet table is not {n}x{n}")
    for a in range(n):
        for b in range(n):
            if not 0 <= meet[a][b] < n:
                raise DimensionMismatch(f"meet[{a}][{b}] out of range")
    for a in range(n):
        if meet[a][a] != a:
            raise AxiomViolation("x^x = x", (a,))
        for b in range(n):
            if meet[a][b] != meet[b][a]:
                raise AxiomViolation("x^y = y^x", (a, b))
            for c in range(n):
                if meet[meet[a][b]][c] != meet[a][meet[b][c]]:
                    raise AxiomViolation("(x^y)^z = x^(y^z)", (a, b, c))
    Y = Semilattice(n, meet)
    # the induced order is automatically a partial order; sanity check
    for a in range(n):
        for b in range(n):
            if Y.le(a, b) and Y.le(b, a):
                assert a == b
    return Y


def downset(Y: Semilattice, subset) -> frozenset[int]:
    """All elements below some member of the subset."""
    sub = set(subset)
    return frozenset(a for a in range(Y.n)
                     if any(Y.le(a, b) for b in sub))


def semilattice_as_rsemigroup(Y: Semilattice) -> RSemigroup:
    ident = tuple(range(Y.n))
    return validate_restriction(Y.n, Y.meet, ident, ident)


def projection_semilattice(S: RSemigroup) -> Semilattice:
    """The projections of S as a standalone semilattice; element i is
    S.projections[i]."""
    ps = S.projections
    pos = {e: i for i, e in enumerate(ps)}
    meet = tuple(tuple(pos[S.mul[e][f]] for f in ps) for e in ps)
    return validate_semilattice(len(ps), meet)


@cache
def pbij_elements(carrier: int) -> tuple[PBij, ...]:
    """All partial bijections of a carrier-set, in canonical order
    (domain bitmask, then image tuple)."""
    elems = []
    for mask in range(1 << carrier):
        dom = [x for x in range(carrier) if mask >> x & 1]
        for img in permutations(range(carrier), len(dom)):
            elems.append(PBij.from_pairs(carrier, zip(dom, img)))
    elems.sort(key=lambda f: (f.dom_mask(), f.images))
    return tuple(elems)


def _rsemigroup_from_pbijs(elems: list[PBij], max_elements: int) -> RSemigroup:
    if len(elems) > max_elements:
        raise SizeLimit(f"{len(elems)} elements exceeds bound {max_elements}")
    index = {f: i for i, f in enumerate(elems)}
    mul = []
    for f in elems:
        row = []
        for g in elems:
            h = f.compose(g)
            assert h in index, "set not closed under composition"
            row.append(index[h])
        mul.append(tuple(row))
    inverse = tuple(index[f.inverse()] for f in elems)
    return from_inverse(tuple(mul), inverse,
                        labels=tuple(f.literal() for f in elems))


def symmetric_inverse(k: int, max_elements: int = 5000) -> RSemigroup:
    """The symmetric inverse monoid I(k) on k points as a restriction
    semigroup, with s* = s^-1 s and s+ = s s^-1."""
    return _rsemigroup_from_pbijs(list(pbij_elements(k)), max_elements)


def from_inverse(mul, inverse, labels=None) -> RSemigroup:
    """Build a restriction semigroup from an inverse semigroup table.

    Verifies associativity and that the inverse table gives the unique
    generalized inverse of every element, then puts s* = s^-1 s and
    s+ = s s^-1.
    """
    mul = tuple(tuple(row) for row in mul)
    inverse = tuple(inverse)
    n = len(mul)
    if len(inverse) != n or any(len(row) != n for row in mul):
        raise DimensionMismatch("inverse/mul tables have inconsistent sizes")
    for s in range(n):
        for t in range(n):
            for u in range(n):
                if mul[mul[s][t]][u] != mul[s][mul[t][u]]:
                    raise NotInverse("not associative", (s, t, u))
    for s in range(n):
        t = inverse[s]
        if mul[mul[s][t]][s] != s or mul[mul[t][s]][t] != t:
            raise NotInverse("listed inverse fails", (s, t))
        others = [u for u in range(n)
                  if mul[mul[s][u]][s] == s and mul[mul[u][s]][u] == u]
        if others != [t]:
            raise NotInverse("generalized inverse not unique", (s, *others))
    star = tuple(mul[inverse[s]][s] for s in range(n))
    plus = tuple(mul[s][inverse[s]] for s in range(n))
    S = validate_restriction(n, mul, star, plus, labels=labels)
    idempotents = {s for s in range(n) if mul[s][s] == s}
    assert S.proj_set == idempotents, "projections differ from idempotents"
    return S


def _order_isos(Y: Semilattice, dom: frozenset[int], ran: frozenset[int]) -> list[PBij]:
    """All order isomorphisms dom -> ran between two subposets of Y,
    by backtracking with degree pruning."""
    if len(dom) != len(ran):
        return []
    ds = sorted(dom)
    rs = sorted(ran)

    def degrees(subset, x):
        down = sum(1 for a in subset if Y.le(a, x))
        up = sum(1 for a in subset if Y.le(x, a))
        return (down, up)

    ddeg = {x: degrees(dom, x) for x in ds}
    rdeg = {x: degrees(ran, x) for x in rs}
    if sorted(ddeg.values()) != sorted(rdeg.values()):
        return []
    out = []
    assignment: dict[int, int] = {}
    used: set[int] = set()

    def extend(i: int):
        if i == len(ds):
            out.append(PBij.from_pairs(Y.n, assignment.items()))
            return
        x = ds[i]
        for y in rs:
            if y in used or ddeg[x] != rdeg[y]:
                continue
            if any((Y.le(x, ds[j]) != Y.le(y, assignment[ds[j]])
                    or Y.le(ds[j], x) != Y.le(assignment[ds[j]], y))
                   for j in range(i)):
                continue
            assignment[x] = y
            used.add(y)
            extend(i + 1)
            del assignment[x]
            used.discard(y)

    extend(0)
    return out


def munn_semigroup(Y: Semilattice, max_elements: int = 5000) -> RSemigroup:
    """All order isomorphisms between principal order ideals of Y, as a
    restriction semigroup.  A monoid exactly when Y has a top."""
    elems: list[PBij] = []
    for e in range(Y.n):
        for f in range(Y.n):
            elems.extend(_order_isos(Y, Y.principal_ideal(e), Y.principal_ideal(f)))
    elems = sorted(set(elems), key=lambda g: (g.dom_mask(), g.images))
    S = _rsemigroup_from_pbijs(elems, max_elements)
    has_identity = any(
        all(S.mul[e][x] == x == S.mul[x][e] for x in range(S.n))
        for e in range(S.n))
    assert has_identity == (Y.top is not None)
    proj = {i for i, g in enumerate(elems) if g.is_partial_identity()}
    assert S.proj_set == proj
    return S


def munn_elements(Y: Semilattice) -> tuple[PBij, ...]:
    """The elements of the Munn semigroup of Y, in table order."""
    elems: list[PBij] = []
    for e in range(Y.n):
        for f in range(Y.n):
            elems.extend(_order_isos(Y, Y.principal_ideal(e), Y.principal_ideal(f)))
    return tuple(sorted(set(elems), key=lambda g: (g.dom_mask(), g.images)))


def munn_pbij(S: RSemigroup, s: int) -> PBij:
    """The partial bijection of P(S) induced by s: defined below s*, with
    e going to (se)+.  Indices refer to positions in S.projections."""
    ps = S.projections
    pos = {e: i for i, e in enumerate(ps)}
    pairs = []
    for i, e in enumerate(ps):
        if S.le(e, S.star[s]):
            pairs.append((i, pos[S.plus[S.mul[s][e]]]))
    return PBij.from_pairs(len(ps), pairs)


def munn_representation(S: RSemigroup) -> RSMorphism:
    """The morphism from S into the Munn semigroup of its projection
    semilattice, sending s to the map e -> (se)+ below s*."""
    Y = projection_semilattice(S)
    T = munn_semigroup(Y)
    elems = munn_elements(Y)
    index = {g: i for i, g in enumerate(elems)}
    mapping = []
    for s in range(S.n):
        g = munn_pbij(S, s)
        assert g in index, "induced map is not an ideal order isomorphism"
        mapping.append(index[g])
    return check_rsmorphism(S, T, tuple(mapping))
