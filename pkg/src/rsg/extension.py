"""Proper morphisms between restriction semigroups and their structure.

A surjective morphism psi: T -> S is proper when equal images force
compatibility.  Such a morphism induces two partial actions of S on the
projections of T (the upper one scans preimages below s, the lower one
exact preimages); T is then isomorphic to the action product built from
either, via t -> (t+, psi(t)).
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property

from .core import RSemigroup, RSMorphism, check_rsmorphism, compatible
from .errors import OracleMismatch, PreconditionFailed, EquivalenceViolation
from .partial_maps import PBij, munn_pbij, projection_semilattice
from .premorphism import (
    ActionTriple,
    PremorphReport,
    action_triple,
    check_action_conditions,
    check_premorphism,
    classify,
    classify_map_into,
)
from .product import ProductRS, partial_action_product


@dataclass(frozen=True)
class ProperExt:
    """A proper surjective morphism, viewed as an extension of its target."""

    psi: RSMorphism

    @property
    def total(self) -> RSemigroup:
        return self.psi.source

    @property
    def base(self) -> RSemigroup:
        return self.psi.target

    def fiber(self, s: int) -> tuple[int, ...]:
        return tuple(t for t in range(self.total.n) if self.psi.map[t] == s)

    @cached_property
    def proj_positions(self) -> dict[int, int]:
        return {e: i for i, e in enumerate(self.total.projections)}


def is_proper_morphism(f: RSMorphism) -> bool:
    """Properness by definition, cross-checked against the generalized
    Green's relation characterization (injectivity on classes of equal
    star and of equal plus)."""
    if not f.surjective:
        return False
    S, mapping = f.source, f.map
    by_def = all(compatible(S, s, t)
                 for s in range(S.n) for t in range(S.n)
                 if mapping[s] == mapping[t])
    by_classes = True
    for s in range(S.n):
        for t in range(S.n):
            if s != t and mapping[s] == mapping[t] and (
                    S.star[s] == S.star[t] or S.plus[s] == S.plus[t]):
                by_classes = False
                break
        if not by_classes:
            break
    if by_def != by_classes:
        raise OracleMismatch("is_proper_morphism",
                             "definition differs from class-injectivity test")
    return by_def


def proper_extension(f: RSMorphism) -> ProperExt:
    if not f.surjective:
        raise PreconditionFailed("surjective")
    if not is_proper_morphism(f):
        raise PreconditionFailed("proper")
    return ProperExt(f)


def _underlying_maps(e: ProperExt) -> tuple[tuple[PBij, ...], tuple[PBij, ...]]:
    """The upper and lower partial bijections of the base on the
    projections of the total algebra, with the well-definedness and
    containment facts asserted."""
    psi, T, S = e.psi, e.total, e.base
    ps = T.projections
    pos = e.proj_positions

    def build(exact: bool) -> tuple[PBij, ...]:
        out = []
        for s in range(S.n):
            values: dict[int, int] = {}
            for t in range(T.n):
                if exact:
                    if psi.map[t] != s:
                        continue
                elif not S.le(psi.map[t], s):
                    continue
                for p in ps:
                    if T.le(p, T.star[t]):
                        v = T.plus[T.mul[t][p]]
                        if p in values:
                            assert values[p] == v, (s, p)  # well defined
                        else:
                            values[p] = v
            out.append(PBij.from_pairs(
                len(ps), [(pos[a], pos[b]) for a, b in values.items()]))
        return tuple(out)

    hat, tilde = build(exact=False), build(exact=True)
    for s in range(S.n):
        assert tilde[s].le(hat[s]), s
    for s in S.projections:
        assert hat[s].is_partial_identity() and tilde[s].is_partial_identity()
    # the stated range description
    for s in range(S.n):
        for exact, fam in ((False, hat), (True, tilde)):
            expect = {pos[p] for p in ps for t in range(T.n)
                      if (psi.map[t] == s if exact else S.le(psi.map[t], s))
                      and T.le(p, T.plus[t])}
            assert fam[s].ran == expect, s
    # compatible base elements act alike on shared domain points
    for s in range(S.n):
        for u in range(S.n):
            if (s, u) not in S.compat:
                continue
            for fam in (hat, tilde):
                for x in fam[s].dom & fam[u].dom:
                    assert fam[s](x) == fam[u](x), (s, u, x)
    return hat, tilde


def _underlying_triple(e: ProperExt, upper: bool) -> ActionTriple:
    psi, T, S = e.psi, e.total, e.base
    hat, tilde = _underlying_maps(e)
    maps = hat if upper else tilde
    phi = check_premorphism(S, len(T.projections), maps)
    q = tuple(psi.map[p] for p in T.projections)
    triple = action_triple(phi, q, projection_semilattice(T))
    flags = check_action_conditions(triple)
    assert flags.all_a1_a4(), flags
    assert flags.a3a if upper else flags.a3b
    return triple


def upper_underlying(e: ProperExt) -> ActionTriple:
    """The action of the base on P(T) whose s-domain collects projections
    below t* for any t mapping below s.  Always order-preserving."""
    return _underlying_triple(e, upper=True)


def lower_underlying(e: ProperExt) -> ActionTriple:
    """The variant that only scans exact preimages of s."""
    return _underlying_triple(e, upper=False)


def decompose(e: ProperExt) -> tuple[ProductRS, RSMorphism]:
    """Rebuild the total algebra as an action product over its base.

    Returns the product together with the isomorphism t -> (t+, psi(t)).
    The products built from the upper and the lower action coincide
    element-for-element and table-for-table.
    """
    psi, T = e.psi, e.total
    prod = partial_action_product(upper_underlying(e))
    index = {p: i for i, p in enumerate(prod.pairs)}
    pos = e.proj_positions
    eta = tuple(index[(pos[T.plus[t]], psi.map[t])] for t in range(T.n))
    assert len(set(eta)) == T.n == prod.algebra.n, "not bijective"
    eta_m = check_rsmorphism(T, prod.algebra, eta)
    for t in range(T.n):
        assert prod.psi.map[eta[t]] == psi.map[t], t

    other = partial_action_product(lower_underlying(e))
    assert other.pairs == prod.pairs
    assert other.algebra.mul == prod.algebra.mul
    assert other.algebra.star == prod.algebra.star
    assert other.algebra.plus == prod.algebra.plus
    return prod, eta_m


# ---------------------------------------------------------------------------
# classification

@dataclass(frozen=True)
class TauResult:
    """The section of a proper morphism picking each fiber's maximum.

    values is None when some fiber has no maximum; missing_fiber then
    holds the least such base element.  That is a classification
    outcome, not an error.
    """

    values: tuple[int, ...] | None
    missing_fiber: int | None
    report: PremorphReport | None


@dataclass(frozen=True)
class ExtensionReport:
    order_proper: bool
    extra_proper: bool
    perfect: bool
    has_fiber_maxima: bool
    f_morphism: bool | None
    fa_morphism: bool | None
    perfect_f: bool | None
    witnesses: dict

    names = ("order_proper", "extra_proper", "perfect", "has_fiber_maxima",
             "f_morphism", "fa_morphism", "perfect_f")


def fiber_maxima(f: RSMorphism) -> tuple[tuple[int, ...] | None, int | None]:
    """Per-fiber maxima of a surjective morphism under the natural order
    of the source, or the first base element whose fiber has none."""
    T, S = f.source, f.target
    out = []
    for s in range(S.n):
        fib = [t for t in range(T.n) if f.map[t] == s]
        tops = [t for t in fib if all(T.le(u, t) for u in fib)]
        if not tops:
            return None, s
        assert len(tops) == 1
        out.append(tops[0])
    return tuple(out), None


def tau(e: ProperExt) -> TauResult:
    """The max-of-fiber section, when it exists, classified as a map
    into the total algebra.

    Asserts that the section is a premorphism and that the lower action
    is its composite with the projection representation of the total
    algebra.
    """
    psi, T, S = e.psi, e.total, e.base
    values, missing = fiber_maxima(psi)
    if values is None:
        return TauResult(None, missing, None)
    for s in range(S.n):
        for t in range(S.n):
            assert T.le(T.mul[values[s]][values[t]], values[S.mul[s][t]])
        assert T.le(T.star[values[s]], values[S.star[s]])
        assert T.le(T.plus[values[s]], values[S.plus[s]])
    tilde = lower_underlying(e)
    for s in range(S.n):
        assert tilde.phi.maps[s] == munn_pbij(T, values[s]), s
    report = classify_map_into(S, T, values)
    return TauResult(values, None, report)


def _agree(name: str, routes: dict[str, bool]) -> bool:
    vals = set(routes.values())
    if len(vals) != 1:
        raise EquivalenceViolation(name, tuple(sorted(routes.items())))
    return vals.pop()


def classify_extension(e: ProperExt) -> ExtensionReport:
    """Decide the extension classes, each by all of its proved
    characterizations, which must agree."""
    psi, T, S = e.psi, e.total, e.base
    hat = upper_underlying(e)
    tilde = lower_underlying(e)
    hat_rep = classify(hat.phi)
    tilde_rep = classify(tilde.phi)
    witnesses: dict[str, tuple] = {}

    # order-proper, four ways
    lift_ok, lift_wit = True, ()
    for s in range(S.n):
        for t in range(S.n):
            if not S.le(s, t):
                continue
            for u in e.fiber(s):
                if not any(T.le(u, v) for v in e.fiber(t)):
                    lift_ok, lift_wit = False, (s, t, u)
                    break
            if not lift_ok:
                break
        if not lift_ok:
            break
    ideal_ok = all(
        {t for t in range(T.n) if S.le(psi.map[t], s)}
        == {u for t in e.fiber(s) for u in T.below(t)}
        for s in range(S.n))
    order_proper = _agree("order-proper characterizations", {
        "tilde order-preserving": tilde_rep.order_preserving,
        "tilde equals hat": tilde.phi.maps == hat.phi.maps,
        "fiber lifting": lift_ok,
        "preimage of ideal is ideal of preimage": ideal_ok,
    })
    if not order_proper:
        witnesses["order_proper"] = lift_wit

    extra_proper = _agree("extra-proper characterizations", {
        "hat locally strong": hat_rep.locally_strong,
        "hat strong": hat_rep.strong,
        "tilde locally strong": tilde_rep.locally_strong,
    })
    if not extra_proper:
        witnesses["extra_proper"] = tilde_rep.witnesses.get(
            "locally_strong_r", tilde_rep.witnesses.get("locally_strong_l", ()))

    pre_ideal = [frozenset(t for t in range(T.n) if S.le(psi.map[t], s))
                 for s in range(S.n)]
    prod_ok, prod_wit = True, ()
    for s in range(S.n):
        for u in range(S.n):
            made = {T.mul[a][b] for a in pre_ideal[s] for b in pre_ideal[u]}
            if made != pre_ideal[S.mul[s][u]]:
                prod_ok, prod_wit = False, (s, u)
                break
        if not prod_ok:
            break
    perfect = _agree("perfect characterizations", {
        "hat multiplicative": hat_rep.multiplicative,
        "hat locally multiplicative": hat_rep.locally_multiplicative,
        "tilde locally multiplicative": tilde_rep.locally_multiplicative,
        "preimage ideals multiply": prod_ok,
    })
    if not perfect:
        witnesses["perfect"] = prod_wit

    tr = tau(e)
    if tr.values is None:
        witnesses["fiber_without_maximum"] = (tr.missing_fiber,)
        return ExtensionReport(order_proper, extra_proper, perfect,
                               False, None, None, None, witnesses)
    # the section and the lower action agree on every strength
    for name in ("order_preserving", "locally_strong", "strong",
                 "locally_multiplicative", "multiplicative"):
        if tr.report.flag(name) != tilde_rep.flag(name):
            raise EquivalenceViolation(f"section vs lower action on {name}")
    f_flag = tr.report.order_preserving
    fa_flag = f_flag and tr.report.locally_strong
    if not f_flag:
        witnesses["f_morphism"] = tr.report.witnesses.get("order_preserving", ())
    return ExtensionReport(order_proper, extra_proper, perfect, True,
                           f_flag, fa_flag, perfect and f_flag, witnesses)


def identity_extension(S: RSemigroup) -> ProperExt:
    return proper_extension(check_rsmorphism(S, S, tuple(range(S.n))))


def sigma_extension(S: RSemigroup) -> ProperExt | None:
    """The canonical projection onto the maximal reduced quotient, as an
    extension when S is proper."""
    from .core import sigma_quotient
    _, proj = sigma_quotient(S)
    return proper_extension(proj) if proj.proper else None
