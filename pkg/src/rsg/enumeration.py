"""Brute-force generation of small semilattices, restriction semigroups,
premorphisms, action triples and proper extensions.

Generators prune hard while searching but every emitted value passes the
full validator of its home module, which is an independent code path.
Streams are lazy, deterministically ordered, and guarded by count
limits.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cache
from itertools import permutations, product as iproduct

from .core import (
    RSemigroup,
    canonical_form,
    check_rsmorphism,
    validate_restriction,
)
from .errors import PMViolation, SizeLimit
from .extension import is_proper_morphism, proper_extension
from .partial_maps import (
    PBij,
    Semilattice,
    downset,
    validate_semilattice,
)
from .premorphism import (
    action_triple,
    check_action_conditions,
    check_premorphism,
    classify,
)


@dataclass(frozen=True)
class EnumConfig:
    max_semigroup_order: int = 4
    max_carrier: int = 4
    up_to_iso: bool = True
    count_limit: int = 1_000_000


def _guard(count: int, limit: int | None):
    if limit is not None and count > limit:
        raise SizeLimit(f"stream exceeded count limit {limit}")


# ---------------------------------------------------------------------------
# semilattices

def _posets(n: int):
    """All partial orders on 0..n-1, as strict-pair sets."""
    pairs = [(i, j) for i in range(n) for j in range(i + 1, n)]
    for choice in iproduct((0, 1, 2), repeat=len(pairs)):
        rel = set()
        for (i, j), c in zip(pairs, choice):
            if c == 1:
                rel.add((i, j))
            elif c == 2:
                rel.add((j, i))
        if all((a, d) in rel
               for (a, b) in rel for (c, d) in rel if b == c and a != d):
            yield rel


def enumerate_semilattices(n: int, up_to_iso: bool = False,
                           count_limit: int | None = None):
    """All meet-semilattices on n elements, one per meet table.

    Generated through partial orders in which every pair has a greatest
    lower bound; with up_to_iso, one representative per class under the
    least-relabeled-table canonical form.
    """
    if n < 1:
        raise SizeLimit("need n >= 1")
    seen = set()
    count = 0
    tables = []
    for rel in _posets(n):
        le = [[i == j or (i, j) in rel for j in range(n)] for i in range(n)]
        meet = []
        ok = True
        for a in range(n):
            row = []
            for b in range(n):
                lower = [c for c in range(n) if le[c][a] and le[c][b]]
                glb = [c for c in lower if all(le[d][c] for d in lower)]
                if len(glb) != 1:
                    ok = False
                    break
                row.append(glb[0])
            if not ok:
                break
            meet.append(tuple(row))
        if ok:
            tables.append(tuple(meet))
    for meet in sorted(tables):
        if up_to_iso:
            key = min(
                tuple(tuple(img[meet[inv[i]][inv[j]]] for j in range(n))
                      for i in range(n))
                for img, inv in _perm_pairs(n))
            if key in seen:
                continue
            seen.add(key)
        count += 1
        _guard(count, count_limit)
        yield validate_semilattice(n, meet)


def _perm_pairs(n: int):
    for img in permutations(range(n)):
        inv = [0] * n
        for a, b in enumerate(img):
            inv[b] = a
        yield img, tuple(inv)


# ---------------------------------------------------------------------------
# restriction semigroups

def _semigroup_tables(n: int):
    """All associative n x n tables, by cellwise backtracking.

    After assigning a cell, every associativity constraint whose four
    lookups just became determined is checked; a full pass confirms each
    completed table.
    """
    mul = [[-1] * n for _ in range(n)]
    rng = range(n)

    def assoc_around(i: int, j: int) -> bool:
        # constraints reading the new cell (i, j) in one of the four slots
        v = mul[i][j]
        for c in rng:                       # (i, j, c): reads cell (a,b)
            bc = mul[j][c]
            if bc != -1:
                left, right = mul[v][c], mul[i][bc]
                if left != -1 and right != -1 and left != right:
                    return False
        for a in rng:                       # (a, i, j): reads cell (b,c)
            ab = mul[a][i]
            if ab != -1:
                left, right = mul[ab][j], mul[a][v]
                if left != -1 and right != -1 and left != right:
                    return False
        for a in rng:                       # (a, b, j) with mul[a][b] = i
            for b in rng:
                if mul[a][b] == i:
                    bc = mul[b][j]
                    if bc != -1 and mul[a][bc] != -1 and mul[a][bc] != v:
                        return False
        for b in rng:                       # (i, b, c) with mul[b][c] = j
            for c in rng:
                if mul[b][c] == j:
                    ab = mul[i][b]
                    if ab != -1 and mul[ab][c] != -1 and mul[ab][c] != v:
                        return False
        return True

    def fill(k: int):
        if k == n * n:
            if all(mul[mul[a][b]][c] == mul[a][mul[b][c]]
                   for a in rng for b in rng for c in rng):
                yield tuple(tuple(row) for row in mul)
            return
        i, j = divmod(k, n)
        for v in rng:
            mul[i][j] = v
            if assoc_around(i, j):
                yield from fill(k + 1)
        mul[i][j] = -1

    yield from fill(0)


def _restriction_structures(mul, n: int):
    """All (star, plus) pairs compatible with a semigroup table."""
    right_ids = []
    left_ids = []
    for x in range(n):
        right_ids.append(tuple(e for e in range(n)
                               if mul[x][e] == x and mul[e][e] == e))
        left_ids.append(tuple(e for e in range(n)
                              if mul[e][x] == x and mul[e][e] == e))
        if not right_ids[-1] or not left_ids[-1]:
            return
    for star in iproduct(*right_ids):
        if any(star[star[x]] != star[x] for x in range(n)):
            continue
        image = set(star)
        for plus in iproduct(*left_ids):
            if any(plus[plus[x]] != plus[x] for x in range(n)):
                continue
            if set(plus) != image:
                continue
            if any(star[plus[x]] != plus[x] or plus[star[x]] != star[x]
                   for x in range(n)):
                continue
            yield star, plus


def enumerate_restriction_semigroups(n: int, up_to_iso: bool = False,
                                     count_limit: int | None = None):
    """All restriction semigroups on n elements: every associative table
    together with every star/plus pair passing full validation."""
    from .errors import AxiomViolation

    seen = set()
    count = 0
    for mul in _semigroup_tables(n):
        for star, plus in _restriction_structures(mul, n):
            try:
                S = validate_restriction(n, mul, star, plus)
            except AxiomViolation:
                continue
            if up_to_iso:
                key = canonical_form(S)
                if key in seen:
                    continue
                seen.add(key)
            count += 1
            _guard(count, count_limit)
            yield S


# ---------------------------------------------------------------------------
# premorphisms

def _partial_identities(carrier: int) -> list[PBij]:
    out = []
    for mask in range(1 << carrier):
        out.append(PBij.partial_identity(
            carrier, [x for x in range(carrier) if mask >> x & 1]))
    return out


def enumerate_premorphisms(S: RSemigroup, carrier: int, filters: tuple = (),
                           count_limit: int | None = None):
    """All premorphisms from S into the partial bijections of the
    carrier, optionally post-filtered by classification flags.

    Search assigns projections first (always partial identities) and
    constrains every other element's domain and range by the images of
    its star and plus; candidates are then revalidated from scratch.
    """
    from .partial_maps import pbij_elements

    ps = S.projections
    others = [s for s in range(S.n) if s not in S.proj_set]
    order = list(ps) + others
    position = {s: i for i, s in enumerate(order)}
    pis = _partial_identities(carrier)
    all_pbij = pbij_elements(carrier)
    assignment: dict[int, PBij] = {}
    count = 0

    def candidates(s: int):
        if s in S.proj_set:
            return pis
        dom_bound = assignment[S.star[s]].dom
        ran_bound = assignment[S.plus[s]].dom
        return [f for f in all_pbij
                if f.dom <= dom_bound and f.ran <= ran_bound]

    def pm_ok(s: int) -> bool:
        fs = assignment[s]
        for t in assignment:
            st, ts = S.mul[s][t], S.mul[t][s]
            if st in assignment and not fs.compose(assignment[t]).le(assignment[st]):
                return False
            if ts in assignment and not assignment[t].compose(fs).le(assignment[ts]):
                return False
        if S.star[s] in assignment and not fs.star_map().le(assignment[S.star[s]]):
            return False
        if S.plus[s] in assignment and not fs.plus_map().le(assignment[S.plus[s]]):
            return False
        return True

    def fill(k: int):
        nonlocal count
        if k == S.n:
            try:
                phi = check_premorphism(
                    S, carrier, tuple(assignment[s] for s in range(S.n)))
            except PMViolation:
                return
            if filters:
                report = classify(phi)
                if not all(report.flag(name) for name in filters):
                    return
            count += 1
            _guard(count, count_limit)
            yield phi
            return
        s = order[k]
        for f in candidates(s):
            assignment[s] = f
            if pm_ok(s):
                yield from fill(k + 1)
            del assignment[s]

    yield from fill(0)


def order_ideal_isos(Y: Semilattice) -> tuple[PBij, ...]:
    """All order isomorphisms between downsets of Y (the ambient monoid
    for conditions a1 + a2), in canonical order."""
    from .partial_maps import _order_isos

    out = set()
    for d1 in Y.downsets:
        for d2 in Y.downsets:
            out.update(_order_isos(Y, d1, d2))
    return tuple(sorted(out, key=lambda f: (f.dom_mask(), f.images)))


def semilattice_maps_into_projections(Y: Semilattice, S: RSemigroup):
    """All meet-preserving q: Y -> P(S), surjective onto the projections
    (a necessary condition for the anchored-point condition a4)."""
    ps = S.projections
    out = []
    for q in iproduct(ps, repeat=Y.n):
        if set(q) != set(ps):
            continue
        if all(q[Y.meet[a][b]] == S.mul[q[a]][q[b]]
               for a in range(Y.n) for b in range(Y.n)):
            out.append(tuple(q))
    return out


def enumerate_action_triples(S: RSemigroup, max_carrier: int,
                             require_a3a: bool = False,
                             count_limit: int | None = None):
    """All action triples of S satisfying the construction conditions,
    over carriers up to the bound (semilattices one per isomorphism
    class), revalidated by the condition checker."""
    count = 0
    for m in range(1, max_carrier + 1):
        for Y in semilattices(m):
            sigma_y = order_ideal_isos(Y)
            for q in semilattice_maps_into_projections(Y, S):
                for t in _triples_for(S, Y, sigma_y, q, require_a3a):
                    count += 1
                    _guard(count, count_limit)
                    yield t


def _triples_for(S: RSemigroup, Y: Semilattice, sigma_y, q, require_a3a: bool):
    ps = S.projections
    others = [s for s in range(S.n) if s not in S.proj_set]
    order = list(ps) + others
    fibers = {e: frozenset(y for y in range(Y.n) if q[y] == e) for e in ps}
    assignment: dict[int, PBij] = {}

    def candidates(s: int):
        if s in S.proj_set:
            lower = downset(Y, fibers[s])
            upper = frozenset(y for y in range(Y.n) if S.le(q[y], s))
            return [PBij.partial_identity(Y.n, d)
                    for d in Y.downsets if lower <= d <= upper]
        dom_bound = assignment[S.star[s]].dom
        ran_bound = assignment[S.plus[s]].dom
        return [f for f in sigma_y
                if f.dom <= dom_bound and f.ran <= ran_bound
                and any(q[y] == S.star[s] for y in f.dom)]

    def pm_ok(s: int) -> bool:
        fs = assignment[s]
        if s in S.proj_set and not any(q[y] == S.star[s] for y in fs.dom):
            return False
        for t in assignment:
            st, ts = S.mul[s][t], S.mul[t][s]
            if st in assignment and not fs.compose(assignment[t]).le(assignment[st]):
                return False
            if ts in assignment and not assignment[t].compose(fs).le(assignment[ts]):
                return False
        return True

    def fill(k: int):
        if k == S.n:
            try:
                phi = check_premorphism(
                    S, Y.n, tuple(assignment[s] for s in range(S.n)))
            except PMViolation:
                return
            t = action_triple(phi, q, Y)
            flags = check_action_conditions(t)
            if flags.all_a1_a4() and (flags.a3a or not require_a3a):
                yield t
            return
        s = order[k]
        for f in candidates(s):
            assignment[s] = f
            if pm_ok(s):
                yield from fill(k + 1)
            del assignment[s]

    yield from fill(0)


@cache
def restriction_semigroups(n: int, up_to_iso: bool = True) -> tuple[RSemigroup, ...]:
    """Materialized (and memoized) enumeration, for repeated pool scans."""
    return tuple(enumerate_restriction_semigroups(n, up_to_iso=up_to_iso))


@cache
def semilattices(n: int, up_to_iso: bool = True) -> tuple[Semilattice, ...]:
    return tuple(enumerate_semilattices(n, up_to_iso=up_to_iso))


# ---------------------------------------------------------------------------
# proper extensions

def enumerate_proper_extensions(t_order: int, S: RSemigroup,
                                up_to_iso: bool = True,
                                count_limit: int | None = None):
    """All proper surjective morphisms onto S from restriction
    semigroups of the given order (one source per isomorphism class when
    up_to_iso)."""
    from .errors import NotAMorphism

    count = 0
    for T in restriction_semigroups(t_order, up_to_iso=up_to_iso):
        for mapping in iproduct(range(S.n), repeat=T.n):
            if set(mapping) != set(range(S.n)):
                continue
            try:
                f = check_rsmorphism(T, S, mapping)
            except NotAMorphism:
                continue
            if is_proper_morphism(f):
                count += 1
                _guard(count, count_limit)
                yield proper_extension(f)
