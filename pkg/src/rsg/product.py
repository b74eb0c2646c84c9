"""The partial action product of a semilattice by a restriction semigroup.

Elements are the admissible pairs (y, s) with y in ran phi_s and
q(y) = s+; multiplication pulls the left coordinate back through phi_s,
meets it with the right factor's coordinate, and pushes forward again.
"""

from __future__ import annotations

from dataclasses import dataclass

from .core import RSemigroup, RSMorphism, check_rsmorphism, validate_restriction
from .errors import PreconditionFailed
from .premorphism import ActionTriple, check_action_conditions


@dataclass(frozen=True)
class ProductRS:
    algebra: RSemigroup
    pairs: tuple[tuple[int, int], ...]
    triple: ActionTriple
    psi: RSMorphism

    def index_of(self, y: int, s: int) -> int:
        return self.pairs.index((y, s))


def partial_action_product(t: ActionTriple) -> ProductRS:
    """Build the product, refuse when any construction condition fails,
    and verify the structural facts about the result.

    The result passes full validation; its projections are a copy of the
    carrier semilattice, its order and compatibility are componentwise,
    and the second-coordinate projection is a proper surjection.
    """
    flags = check_action_conditions(t)
    for name in ("a1", "a2", "a3", "a4"):
        if not getattr(flags, name):
            raise PreconditionFailed(name, flags.witnesses.get(name, ()))

    S, Y, q = t.source, t.lattice, t.q
    maps = t.phi.maps
    pairs = tuple((y, s) for y in range(Y.n) for s in range(S.n)
                  if y in maps[s].ran and q[y] == S.plus[s])
    assert pairs, "product of a validated triple is never empty"
    index = {p: i for i, p in enumerate(pairs)}

    inv = [maps[s].inverse() for s in range(S.n)]
    mul = []
    for (y, s) in pairs:
        row = []
        y1 = inv[s](y)
        for (x, u) in pairs:
            w = Y.meet[y1][x]
            assert w in maps[s].dom
            p = (maps[s](w), S.mul[s][u])
            assert p in index, (y, s, x, u)
            row.append(index[p])
        mul.append(tuple(row))
    star = tuple(index[(inv[s](y), S.star[s])] for (y, s) in pairs)
    plus = tuple(index[(y, S.plus[s])] for (y, s) in pairs)
    labels = tuple(f"({y},{s})" for (y, s) in pairs)
    alg = validate_restriction(len(pairs), tuple(mul), star, plus, labels)

    # projections are exactly the pairs (y, q(y)), and match the carrier
    proj_pairs = {index[(y, q[y])] for y in range(Y.n)}
    assert alg.proj_set == proj_pairs
    for y in range(Y.n):
        for z in range(Y.n):
            yz = Y.meet[y][z]
            assert (alg.mul[index[(y, q[y])]][index[(z, q[z])]]
                    == index[(yz, q[yz])]), (y, z)
    # order and compatibility are componentwise
    for i, (y, s) in enumerate(pairs):
        for j, (z, u) in enumerate(pairs):
            assert ((i, j) in alg.leq) == (Y.le(y, z) and S.le(s, u)), (i, j)
            assert ((i, j) in alg.compat) == ((s, u) in S.compat), (i, j)

    psi = check_rsmorphism(alg, S, tuple(s for (_, s) in pairs))
    assert psi.surjective and psi.proper
    return ProductRS(alg, pairs, t, psi)


def projection_morphism(p: ProductRS) -> RSMorphism:
    """The second-coordinate projection of the product, proper and
    surjective by construction."""
    assert p.psi.proper and p.psi.surjective
    return p.psi
