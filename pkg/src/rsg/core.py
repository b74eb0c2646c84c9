"""Finite restriction semigroups as table algebras.

A restriction semigroup is a (2,1,1)-algebra (S; *, +, mul) whose unary
operations behave like "domain" and "range" projections.  Elements are
dense indices 0..n-1; all structure lives in lookup tables.  Values are
immutable after validation and may be shared freely.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from itertools import permutations

from .errors import (
    AxiomViolation,
    DimensionMismatch,
    NotAMorphism,
    OracleMismatch,
)

Table = tuple[tuple[int, ...], ...]


@dataclass(frozen=True)
class RSemigroup:
    """A validated finite restriction semigroup.

    Build instances through :func:`validate_restriction`; the constructor
    itself does not check the axioms.
    """

    n: int
    mul: Table
    star: tuple[int, ...]
    plus: tuple[int, ...]
    labels: tuple[str, ...] | None = None

    def m(self, a: int, b: int) -> int:
        return self.mul[a][b]

    def st(self, a: int) -> int:
        return self.star[a]

    def pl(self, a: int) -> int:
        return self.plus[a]

    @cached_property
    def projections(self) -> tuple[int, ...]:
        """The semilattice of projections {s* : s in S}, sorted."""
        ps = {self.star[s] for s in range(self.n)}
        assert ps == {self.plus[s] for s in range(self.n)}
        for e in ps:
            assert self.star[e] == e and self.plus[e] == e
            for f in ps:
                assert self.mul[e][f] in ps
        return tuple(sorted(ps))

    @cached_property
    def proj_set(self) -> frozenset[int]:
        return frozenset(self.projections)

    @cached_property
    def leq(self) -> frozenset[tuple[int, int]]:
        """The natural partial order, materialized as a pair set."""
        return natural_order(self)

    def le(self, a: int, b: int) -> bool:
        return (a, b) in self.leq

    def below(self, b: int) -> tuple[int, ...]:
        return tuple(a for a in range(self.n) if (a, b) in self.leq)

    @cached_property
    def compat(self) -> frozenset[tuple[int, int]]:
        return frozenset((s, t) for s in range(self.n) for t in range(self.n)
                         if compatible(self, s, t))

    @cached_property
    def sigma_blocks(self) -> tuple[tuple[int, ...], ...]:
        return sigma(self).blocks

    @cached_property
    def sigma_pairs(self) -> frozenset[tuple[int, int]]:
        rel = set()
        for block in self.sigma_blocks:
            rel.update((a, b) for a in block for b in block)
        return frozenset(rel)

    @cached_property
    def inverse_table(self) -> tuple[int, ...] | None:
        """Unique generalized inverses, when the algebra is an inverse
        semigroup with the induced star/plus; None otherwise."""
        inv = []
        for s in range(self.n):
            cands = [t for t in range(self.n)
                     if self.mul[self.mul[s][t]][s] == s
                     and self.mul[self.mul[t][s]][t] == t]
            if len(cands) != 1:
                return None
            t = cands[0]
            if self.star[s] != self.mul[t][s] or self.plus[s] != self.mul[s][t]:
                return None
            inv.append(t)
        return tuple(inv)

    def is_inverse_type(self) -> bool:
        return self.inverse_table is not None

    def label(self, a: int) -> str:
        return self.labels[a] if self.labels else str(a)


@dataclass(frozen=True)
class RSMorphism:
    """A total (2,1,1)-morphism between restriction semigroups."""

    source: RSemigroup
    target: RSemigroup
    map: tuple[int, ...]
    surjective: bool = False
    proper: bool = False
    projection_pure: bool = False

    def __call__(self, a: int) -> int:
        return self.map[a]


@dataclass(frozen=True)
class CongruencePartition:
    """A partition of element indices that is a congruence for mul, *, +."""

    blocks: tuple[tuple[int, ...], ...]
    kind: str  # "sigma" | "kernel"

    @cached_property
    def block_of(self) -> tuple[int, ...]:
        n = sum(len(b) for b in self.blocks)
        out = [-1] * n
        for i, block in enumerate(self.blocks):
            for a in block:
                out[a] = i
        return tuple(out)

    def related(self, a: int, b: int) -> bool:
        return self.block_of[a] == self.block_of[b]


def _check_tables(n, mul, star, plus):
    if n < 1:
        raise DimensionMismatch(f"need at least one element, got n={n}")
    if len(mul) != n or any(len(row) != n for row in mul):
        raise DimensionMismatch(f"mul table is not {n}x{n}")
    if len(star) != n or len(plus) != n:
        raise DimensionMismatch(f"star/plus tables are not length {n}")
    for i, row in enumerate(mul):
        for j, v in enumerate(row):
            if not 0 <= v < n:
                raise DimensionMismatch(f"mul[{i}][{j}]={v} out of range")
    for name, tab in (("star", star), ("plus", plus)):
        for i, v in enumerate(tab):
            if not 0 <= v < n:
                raise DimensionMismatch(f"{name}[{i}]={v} out of range")


def validate_restriction(n: int, mul, star, plus, labels=None) -> RSemigroup:
    """Validate (mul, star, plus) as a restriction semigroup.

    Checks associativity, the left identities (x+x=x, x+y+=y+x+,
    (x+y)+=x+y+, (xy)+x=xy+), their right duals for *, and the links
    (x+)*=x+ and (x*)+=x*.  Raises AxiomViolation with the name of the
    first identity that fails and its lexicographically least witness.
    """
    mul = tuple(tuple(row) for row in mul)
    star = tuple(star)
    plus = tuple(plus)
    _check_tables(n, mul, star, plus)

    rng = range(n)
    for s in rng:
        for t in rng:
            for u in rng:
                if mul[mul[s][t]][u] != mul[s][mul[t][u]]:
                    raise AxiomViolation("(xy)z = x(yz)", (s, t, u))
    for x in rng:
        if mul[plus[x]][x] != x:
            raise AxiomViolation("x+x = x", (x,))
        if mul[x][star[x]] != x:
            raise AxiomViolation("xx* = x", (x,))
    for x in rng:
        for y in rng:
            if mul[plus[x]][plus[y]] != mul[plus[y]][plus[x]]:
                raise AxiomViolation("x+y+ = y+x+", (x, y))
            if plus[mul[plus[x]][y]] != mul[plus[x]][plus[y]]:
                raise AxiomViolation("(x+y)+ = x+y+", (x, y))
            if mul[plus[mul[x][y]]][x] != mul[x][plus[y]]:
                raise AxiomViolation("(xy)+x = xy+", (x, y))
            if mul[star[x]][star[y]] != mul[star[y]][star[x]]:
                raise AxiomViolation("x*y* = y*x*", (x, y))
            if star[mul[x][star[y]]] != mul[star[x]][star[y]]:
                raise AxiomViolation("(xy*)* = x*y*", (x, y))
            if mul[y][star[mul[x][y]]] != mul[star[x]][y]:
                raise AxiomViolation("y(xy)* = x*y", (x, y))
    for x in rng:
        if star[plus[x]] != plus[x]:
            raise AxiomViolation("(x+)* = x+", (x,))
        if plus[star[x]] != star[x]:
            raise AxiomViolation("(x*)+ = x*", (x,))

    S = RSemigroup(n, mul, star, plus, tuple(labels) if labels else None)

    # Derived laws are consequences of the axioms; failure here is a bug.
    ps = S.projections
    for s in rng:
        for e in ps:
            es, se = mul[e][s], mul[s][e]
            assert es == mul[s][star[es]], (s, e)
            assert se == mul[plus[se]][s], (s, e)
            assert star[se] == mul[star[s]][e], (s, e)
            assert plus[es] == mul[e][plus[s]], (s, e)
    for s in rng:
        for t in rng:
            assert star[mul[s][t]] == star[mul[star[s]][t]], (s, t)
            assert plus[mul[s][t]] == plus[mul[s][plus[t]]], (s, t)
    return S


def projections(S: RSemigroup) -> tuple[int, ...]:
    return S.projections


def natural_order(S: RSemigroup) -> frozenset[tuple[int, int]]:
    """Pairs (s, t) with s <= t, i.e. s = tf for some projection f.

    Cross-checks the equivalent forms s = ts* and s = s+t, and that the
    relation is a partial order.
    """
    mul, star, plus = S.mul, S.star, S.plus
    ps = S.projections
    rel = set()
    for s in range(S.n):
        for t in range(S.n):
            if any(mul[t][f] == s for f in ps):
                rel.add((s, t))
    for s in range(S.n):
        for t in range(S.n):
            a = (s, t) in rel
            b = mul[t][star[s]] == s
            c = mul[plus[s]][t] == s
            assert a == b == c, (s, t)
    for s, t in rel:
        if (t, s) in rel:
            assert s == t, (s, t)
        for u in range(S.n):
            if (t, u) in rel:
                assert (s, u) in rel, (s, t, u)
    return frozenset(rel)


def compatible(S: RSemigroup, s: int, t: int) -> bool:
    """Whether st* = ts* and t+s = s+t."""
    mul, star, plus = S.mul, S.star, S.plus
    return (mul[s][star[t]] == mul[t][star[s]]
            and mul[plus[t]][s] == mul[plus[s]][t])


def _congruence_closure(S: RSemigroup, seed_pairs) -> list[int]:
    """Least congruence containing the seed pairs, by worklist closure.

    Returns a root array (union-find representatives).
    """
    parent = list(range(S.n))

    def find(a):
        while parent[a] != a:
            parent[a] = parent[parent[a]]
            a = parent[a]
        return a

    mul, star, plus = S.mul, S.star, S.plus
    work = list(seed_pairs)
    while work:
        a, b = work.pop()
        ra, rb = find(a), find(b)
        if ra == rb:
            continue
        parent[rb] = ra
        work.append((star[a], star[b]))
        work.append((plus[a], plus[b]))
        for c in range(S.n):
            work.append((mul[a][c], mul[b][c]))
            work.append((mul[c][a], mul[c][b]))
    return [find(a) for a in range(S.n)]


def _partition_from_roots(roots) -> tuple[tuple[int, ...], ...]:
    groups: dict[int, list[int]] = {}
    for a, r in enumerate(roots):
        groups.setdefault(r, []).append(a)
    return tuple(tuple(g) for g in sorted(groups.values()))


def _is_congruence(S: RSemigroup, block_of) -> bool:
    mul, star, plus = S.mul, S.star, S.plus
    for a in range(S.n):
        for b in range(S.n):
            if block_of[a] != block_of[b]:
                continue
            if block_of[star[a]] != block_of[star[b]]:
                return False
            if block_of[plus[a]] != block_of[plus[b]]:
                return False
            for c in range(S.n):
                if block_of[mul[a][c]] != block_of[mul[b][c]]:
                    return False
                if block_of[mul[c][a]] != block_of[mul[c][b]]:
                    return False
    return True


def sigma(S: RSemigroup) -> CongruencePartition:
    """The least congruence identifying all projections.

    Computed by the pairwise test "es = et for some projection e" and
    cross-checked against a worklist congruence closure of P x P; the
    right-multiplier test "se = te" must give the same relation.
    """
    mul = S.mul
    ps = S.projections
    left = {(s, t) for s in range(S.n) for t in range(S.n)
            if any(mul[e][s] == mul[e][t] for e in ps)}
    right = {(s, t) for s in range(S.n) for t in range(S.n)
             if any(mul[s][e] == mul[t][e] for e in ps)}
    if left != right:
        raise OracleMismatch("sigma", "left and right multiplier tests differ")

    roots = _congruence_closure(S, [(ps[0], e) for e in ps[1:]])
    closure = {(s, t) for s in range(S.n) for t in range(S.n)
               if roots[s] == roots[t]}
    if left != closure:
        raise OracleMismatch("sigma", "pairwise test differs from closure oracle")

    part = CongruencePartition(_partition_from_roots(roots), "sigma")
    if not _is_congruence(S, part.block_of):
        raise OracleMismatch("sigma", "result is not a congruence")
    return part


def sigma_quotient(S: RSemigroup) -> tuple[RSemigroup, RSMorphism]:
    """The maximal reduced quotient S/sigma with its canonical projection."""
    part = sigma(S)
    return quotient(S, part)


def quotient(S: RSemigroup, part: CongruencePartition) -> tuple[RSemigroup, RSMorphism]:
    """Quotient by a congruence partition, with blockwise well-definedness
    checks, plus the canonical projection morphism."""
    blocks = part.blocks
    k = len(blocks)
    bo = part.block_of
    reps = [b[0] for b in blocks]
    mul = []
    for i in range(k):
        row = []
        for j in range(k):
            vals = {bo[S.mul[a][b]] for a in blocks[i] for b in blocks[j]}
            assert len(vals) == 1, (i, j)
            row.append(vals.pop())
        mul.append(tuple(row))
    star = []
    plus = []
    for i in range(k):
        vs = {bo[S.star[a]] for a in blocks[i]}
        vp = {bo[S.plus[a]] for a in blocks[i]}
        assert len(vs) == 1 and len(vp) == 1, i
        star.append(vs.pop())
        plus.append(vp.pop())
    Q = validate_restriction(k, tuple(mul), tuple(star), tuple(plus))
    if part.kind == "sigma":
        assert is_reduced(Q)
    proj = check_rsmorphism(S, Q, bo)
    return Q, proj


def kernel_partition(f: RSMorphism) -> CongruencePartition:
    """The fibers of a morphism as a congruence on its source."""
    groups: dict[int, list[int]] = {}
    for a, v in enumerate(f.map):
        groups.setdefault(v, []).append(a)
    part = CongruencePartition(tuple(tuple(g) for g in sorted(groups.values())),
                               "kernel")
    if not _is_congruence(f.source, part.block_of):
        raise OracleMismatch("kernel_partition", "fibers are not a congruence")
    return part


def is_reduced(S: RSemigroup) -> bool:
    return len(S.projections) == 1


def is_proper(S: RSemigroup) -> bool:
    """Whether the compatibility relation coincides with sigma.

    Cross-checks the two-condition form: s* = t* (or s+ = t+) together
    with s sigma t forces s = t.
    """
    via_relations = S.compat == S.sigma_pairs
    two_cond = True
    for s, t in S.sigma_pairs:
        if s != t and (S.star[s] == S.star[t] or S.plus[s] == S.plus[t]):
            two_cond = False
            break
    if via_relations != two_cond:
        raise OracleMismatch("is_proper", "relation test differs from two-condition test")
    return via_relations


def check_rsmorphism(S: RSemigroup, T: RSemigroup, mapping) -> RSMorphism:
    """Validate a total map as a (2,1,1)-morphism and compute its flags."""
    mapping = tuple(mapping)
    if len(mapping) != S.n:
        raise DimensionMismatch(f"map has length {len(mapping)}, expected {S.n}")
    for i, v in enumerate(mapping):
        if not 0 <= v < T.n:
            raise DimensionMismatch(f"map[{i}]={v} out of range")
    for s in range(S.n):
        for t in range(S.n):
            if mapping[S.mul[s][t]] != T.mul[mapping[s]][mapping[t]]:
                raise NotAMorphism("mul", (s, t))
    for s in range(S.n):
        if mapping[S.star[s]] != T.star[mapping[s]]:
            raise NotAMorphism("star", (s,))
        if mapping[S.plus[s]] != T.plus[mapping[s]]:
            raise NotAMorphism("plus", (s,))
    surjective = len(set(mapping)) == T.n
    pure = all(s in S.proj_set
               for s in range(S.n) if mapping[s] in T.proj_set)
    proper = surjective and all(
        compatible(S, s, t)
        for s in range(S.n) for t in range(S.n) if mapping[s] == mapping[t])
    return RSMorphism(S, T, mapping, surjective, proper, pure)


def compose_morphisms(g: RSMorphism, f: RSMorphism) -> RSMorphism:
    """g after f."""
    assert f.target is g.source or f.target == g.source
    return check_rsmorphism(f.source, g.target, tuple(g.map[x] for x in f.map))


def _invariant_vector(S: RSemigroup, a: int):
    below = sum(1 for x in range(S.n) if (x, a) in S.leq)
    above = sum(1 for x in range(S.n) if (a, x) in S.leq)
    return (a in S.proj_set, S.mul[a][a] == a, below, above,
            sum(1 for x in range(S.n) if S.star[x] == a),
            sum(1 for x in range(S.n) if S.plus[x] == a))


def find_isomorphism(S: RSemigroup, T: RSemigroup) -> tuple[int, ...] | None:
    """A (2,1,1)-isomorphism S -> T as an index tuple, or None.

    Backtracks over projection-preserving bijections, pruning on the
    order-degree invariants of each element.
    """
    if S.n != T.n or len(S.projections) != len(T.projections):
        return None
    inv_s = [_invariant_vector(S, a) for a in range(S.n)]
    inv_t = [_invariant_vector(T, a) for a in range(T.n)]
    if sorted(inv_s) != sorted(inv_t):
        return None
    n = S.n
    image = [-1] * n
    used = [False] * n

    def consistent(a: int, b: int) -> bool:
        # candidate image[a]=b; indices 0..a are then all assigned.
        # Check every constraint whose arguments and result lie in 0..a.
        image[a] = b
        try:
            for x in range(a + 1):
                for y in range(a + 1):
                    u = S.mul[x][y]
                    if u <= a and T.mul[image[x]][image[y]] != image[u]:
                        return False
                if S.star[x] <= a and T.star[image[x]] != image[S.star[x]]:
                    return False
                if S.plus[x] <= a and T.plus[image[x]] != image[S.plus[x]]:
                    return False
            return True
        finally:
            image[a] = -1

    def extend(a: int) -> bool:
        if a == n:
            return True
        for b in range(n):
            if used[b] or inv_s[a] != inv_t[b]:
                continue
            if not consistent(a, b):
                continue
            image[a] = b
            used[b] = True
            if extend(a + 1):
                return True
            image[a] = -1
            used[b] = False
        return False

    if not extend(0):
        return None
    out = tuple(image)
    for a in range(n):
        for b in range(n):
            assert out[S.mul[a][b]] == T.mul[out[a]][out[b]]
        assert out[S.star[a]] == T.star[out[a]]
        assert out[S.plus[a]] == T.plus[out[a]]
    return out


def are_isomorphic(S: RSemigroup, T: RSemigroup) -> bool:
    return find_isomorphism(S, T) is not None


def canonical_form(S: RSemigroup) -> tuple:
    """Lexicographically least relabeling among permutations that move the
    projections to the initial indices.  Equal forms iff isomorphic."""
    k = len(S.projections)
    ps = S.projections
    rest = [a for a in range(S.n) if a not in S.proj_set]
    best = None
    for pp in permutations(range(k)):
        for rp in permutations(range(k, S.n)):
            img = [-1] * S.n
            for slot, e in zip(pp, ps):
                img[e] = slot
            for slot, a in zip(rp, rest):
                img[a] = slot
            inv = [-1] * S.n
            for a, b in enumerate(img):
                inv[b] = a
            mul = tuple(tuple(img[S.mul[inv[i]][inv[j]]] for j in range(S.n))
                        for i in range(S.n))
            star = tuple(img[S.star[inv[i]]] for i in range(S.n))
            plus = tuple(img[S.plus[inv[i]]] for i in range(S.n))
            key = (mul, star, plus)
            if best is None or key < best:
                best = key
    return best


def trivial_monoid() -> RSemigroup:
    return validate_restriction(1, ((0,),), (0,), (0,), labels=("1",))
