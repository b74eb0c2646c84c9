"""Premorphisms into symmetric inverse monoids, a.k.a. partial actions by
partial bijections, and the ladder of strength conditions on them.

A premorphism sends s to a partial bijection phi_s so that composites
shrink (phi_s phi_t <= phi_st) and the unary operations shrink likewise.
The classification flags record which of the standard strengthenings
(order-preserving, strong, locally strong, multiplicative, ...) hold,
all decided by brute quantification over pairs.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .core import RSemigroup
from .errors import (
    EquivalenceViolation,
    NotSemilatticeMorphism,
    PMViolation,
    PreconditionFailed,
    SizeLimit,
)
from .partial_maps import (
    PBIJ_OPS,
    PBij,
    Semilattice,
    compatible_pbij,
    downset,
    munn_pbij,
    projection_semilattice,
)


@dataclass(frozen=True)
class Premorph:
    """A validated premorphism from a restriction semigroup into the
    partial bijections of a finite carrier set."""

    source: RSemigroup
    carrier: int
    maps: tuple[PBij, ...]

    def __getitem__(self, s: int) -> PBij:
        return self.maps[s]


def check_premorphism(S: RSemigroup, carrier: int, maps) -> Premorph:
    """Validate the three defining conditions.

    PM1: phi_s phi_t <= phi_st;  PM2: phi_s* <= phi(s*);
    PM3: phi_s+ <= phi(s+).  Also asserts that projections act as
    partial identities and that compatible elements have compatible
    images (both are consequences).
    """
    maps = tuple(maps)
    if len(maps) != S.n:
        raise PreconditionFailed("one partial bijection per element",
                                 (len(maps), S.n))
    for s, f in enumerate(maps):
        if f.carrier != carrier:
            raise PreconditionFailed("carrier size", (s, f.carrier, carrier))
    for s in range(S.n):
        for t in range(S.n):
            if not maps[s].compose(maps[t]).le(maps[S.mul[s][t]]):
                raise PMViolation("PM1", (s, t))
    for s in range(S.n):
        if not maps[s].star_map().le(maps[S.star[s]]):
            raise PMViolation("PM2", (s,))
        if not maps[s].plus_map().le(maps[S.plus[s]]):
            raise PMViolation("PM3", (s,))
    phi = Premorph(S, carrier, maps)
    for e in S.projections:
        assert maps[e].is_partial_identity(), e
    for s in range(S.n):
        for t in range(S.n):
            if (s, t) in S.compat:
                assert compatible_pbij(maps[s], maps[t]), (s, t)
    return phi


# ---------------------------------------------------------------------------
# partial actions as tables

@dataclass(frozen=True)
class LeftAction:
    """s . x table with -1 for undefined; row per source element."""

    source: RSemigroup
    carrier: int
    table: tuple[tuple[int, ...], ...]

    def defined(self, s: int, x: int) -> bool:
        return self.table[s][x] != -1

    def act(self, s: int, x: int) -> int:
        y = self.table[s][x]
        assert y != -1
        return y


@dataclass(frozen=True)
class RightAction:
    """x o s table with -1 for undefined; row per carrier point."""

    source: RSemigroup
    carrier: int
    table: tuple[tuple[int, ...], ...]

    def defined(self, x: int, s: int) -> bool:
        return self.table[x][s] != -1

    def act(self, x: int, s: int) -> int:
        y = self.table[x][s]
        assert y != -1
        return y


def premorph_to_left_action(phi: Premorph) -> LeftAction:
    """The left partial action s . x = phi_s(x), with its four axioms
    asserted."""
    S = phi.source
    table = tuple(tuple(phi.maps[s].images[x] for x in range(phi.carrier))
                  for s in range(S.n))
    act = LeftAction(S, phi.carrier, table)
    for s in range(S.n):
        seen = [y for y in table[s] if y != -1]
        assert len(set(seen)) == len(seen), s                     # (i)
        for x in range(phi.carrier):
            if table[s][x] == -1:
                continue
            sx = table[s][x]
            for t in range(S.n):                                  # (ii)
                if table[t][sx] != -1:
                    ts = S.mul[t][s]
                    assert table[ts][x] == table[t][sx], (t, s, x)
            assert table[S.star[s]][x] == x, (s, x)               # (iii)
            assert table[S.plus[s]][sx] != -1, (s, x)             # (iv)
    return act


def left_action_to_premorph(act: LeftAction) -> Premorph:
    maps = tuple(PBij(act.carrier, row) for row in act.table)
    return check_premorphism(act.source, act.carrier, maps)


def left_to_right_action(act: LeftAction) -> RightAction:
    """The dual action: x o s is defined iff x = s . y, and then equals y.
    Asserts the dual axioms and the identity (s . x) o s = x."""
    S = act.source
    table = [[-1] * S.n for _ in range(act.carrier)]
    for s in range(S.n):
        for y in range(act.carrier):
            x = act.table[s][y]
            if x != -1:
                assert table[x][s] == -1
                table[x][s] = y
    right = RightAction(S, act.carrier, tuple(tuple(r) for r in table))
    tab = right.table
    for s in range(S.n):
        col = [tab[x][s] for x in range(act.carrier) if tab[x][s] != -1]
        assert len(set(col)) == len(col), s                       # (i')
        for x in range(act.carrier):
            if tab[x][s] == -1:
                continue
            xs = tab[x][s]
            for t in range(S.n):                                  # (ii')
                if tab[xs][t] != -1:
                    st = S.mul[s][t]
                    assert tab[x][st] == tab[xs][t], (x, s, t)
            assert tab[x][S.plus[s]] == x, (x, s)                 # (iii')
            assert tab[xs][S.star[s]] != -1, (x, s)               # (iv')
    for s in range(S.n):
        for x in range(act.carrier):
            if act.table[s][x] != -1:
                assert tab[act.table[s][x]][s] == x, (s, x)
    return right


def right_to_left_action(act: RightAction) -> LeftAction:
    S = act.source
    table = [[-1] * act.carrier for _ in range(S.n)]
    for x in range(act.carrier):
        for s in range(S.n):
            y = act.table[x][s]
            if y != -1:
                assert table[s][y] == -1
                table[s][y] = x
    return LeftAction(S, act.carrier, tuple(tuple(r) for r in table))


# ---------------------------------------------------------------------------
# the condition ladder

@dataclass(frozen=True)
class PremorphReport:
    """Truth values of the strength conditions of one premorphism.

    The *_le variants quantify only over pairs with s* below t+ (or
    dually), the *_eq variants only over pairs with s* equal to t+.
    inverse_preserving is None when the source carries no inverse
    semigroup structure.  q1_witness records a pair where an equality-
    restricted condition holds but its order-restricted version fails;
    no such pair is known to exist, and none was treated as an error.
    """

    order_preserving: bool
    strong_r: bool
    strong_l: bool
    locally_strong_r: bool
    locally_strong_l: bool
    locally_strong_r_le: bool
    locally_strong_l_le: bool
    locally_strong_r_eq: bool
    locally_strong_l_eq: bool
    multiplicative: bool
    locally_multiplicative: bool
    locally_multiplicative_r: bool
    locally_multiplicative_l: bool
    locally_multiplicative_eq: bool
    inverse_preserving: bool | None = None
    q1_witness: tuple | None = None
    witnesses: dict = field(default_factory=dict, compare=False)

    @property
    def strong(self) -> bool:
        return self.strong_r and self.strong_l

    @property
    def locally_strong(self) -> bool:
        return self.locally_strong_r and self.locally_strong_l

    names = ("order_preserving", "strong_r", "strong_l", "strong",
             "locally_strong_r", "locally_strong_l", "locally_strong",
             "locally_strong_r_le", "locally_strong_l_le",
             "locally_strong_r_eq", "locally_strong_l_eq",
             "multiplicative", "locally_multiplicative",
             "locally_multiplicative_r", "locally_multiplicative_l",
             "locally_multiplicative_eq", "inverse_preserving")

    def flag(self, name: str):
        return getattr(self, name)


def _flags(S: RSemigroup, val, ops, inverse_of=None):
    """Evaluate the condition ladder for the map s -> val[s] into a target
    whose operations are given by ops (m, st, pl, le)."""
    n = S.n
    mul, star, plus = S.mul, S.star, S.plus
    m, st, pl, le = ops.m, ops.st, ops.pl, ops.le
    flags: dict[str, bool] = {}
    wits: dict[str, tuple] = {}

    def quantify(name, pred, dom=None):
        for s in range(n):
            for t in range(n):
                if dom is not None and not dom(s, t):
                    continue
                if not pred(s, t):
                    flags[name] = False
                    wits[name] = (s, t)
                    return
        flags[name] = True

    quantify("order_preserving",
             lambda s, t: le(val[s], val[t]),
             dom=lambda s, t: S.le(s, t))
    r_eqn = lambda s, t: m(val[s], val[t]) == m(val[mul[s][t]], st(val[t]))
    l_eqn = lambda s, t: m(val[s], val[t]) == m(pl(val[s]), val[mul[s][t]])
    quantify("strong_r", r_eqn)
    quantify("strong_l", l_eqn)
    quantify("locally_strong_r",
             lambda s, t: (m(val[mul[s][plus[t]]], val[t])
                           == m(val[mul[s][t]], st(val[t]))))
    quantify("locally_strong_l",
             lambda s, t: (m(val[s], val[mul[star[s]][t]])
                           == m(pl(val[s]), val[mul[s][t]])))
    quantify("locally_strong_r_le", r_eqn,
             dom=lambda s, t: S.le(star[s], plus[t]))
    quantify("locally_strong_l_le", l_eqn,
             dom=lambda s, t: S.le(plus[t], star[s]))
    quantify("locally_strong_r_eq", r_eqn,
             dom=lambda s, t: star[s] == plus[t])
    quantify("locally_strong_l_eq", l_eqn,
             dom=lambda s, t: plus[t] == star[s])
    m_eqn = lambda s, t: m(val[s], val[t]) == val[mul[s][t]]
    quantify("multiplicative", m_eqn)
    quantify("locally_multiplicative",
             lambda s, t: (m(val[mul[s][plus[t]]], val[mul[star[s]][t]])
                           == val[mul[s][t]]))
    quantify("locally_multiplicative_r",
             lambda s, t: m(val[mul[s][plus[t]]], val[t]) == val[mul[s][t]])
    quantify("locally_multiplicative_l",
             lambda s, t: m(val[s], val[mul[star[s]][t]]) == val[mul[s][t]])
    quantify("locally_multiplicative_eq", m_eqn,
             dom=lambda s, t: star[s] == plus[t])

    inv = None
    if S.inverse_table is not None and inverse_of is not None:
        inv = True
        for s in range(n):
            if val[S.inverse_table[s]] != inverse_of(val[s]):
                inv = False
                wits["inverse_preserving"] = (s,)
                break
    return flags, inv, wits


def _assert_ladder(S: RSemigroup, flags, inv, wits):
    """The proved relationships between the conditions; a failure is an
    implementation bug, except the one genuinely open direction."""
    f = flags

    def need(cond, name, witness=()):
        if not cond:
            raise EquivalenceViolation(name, witness)

    need(f["locally_strong_r"] == f["locally_strong_r_le"], "LSr <-> LSr'")
    need(f["locally_strong_l"] == f["locally_strong_l_le"], "LSl <-> LSl'")
    need(f["strong_r"] == (f["locally_strong_r"] and f["order_preserving"]),
         "Sr <-> LSr & OP")
    need(f["strong_l"] == (f["locally_strong_l"] and f["order_preserving"]),
         "Sl <-> LSl & OP")
    op = f["order_preserving"]
    need(f["multiplicative"] == (f["locally_multiplicative"] and op),
         "M <-> LM & OP")
    need(f["multiplicative"] == (f["locally_multiplicative_r"] and op),
         "M <-> LMr & OP")
    need(f["multiplicative"] == (f["locally_multiplicative_l"] and op),
         "M <-> LMl & OP")
    need(f["locally_multiplicative"] == f["locally_multiplicative_eq"],
         "LM <-> LM'")
    need(not f["locally_strong_r_le"] or f["locally_strong_r_eq"],
         "LSr' -> LSr''")
    need(not f["locally_strong_l_le"] or f["locally_strong_l_eq"],
         "LSl' -> LSl''")

    q1 = None
    if f["locally_strong_r_eq"] and not f["locally_strong_r_le"]:
        q1 = ("r", *wits["locally_strong_r_le"])
    elif f["locally_strong_l_eq"] and not f["locally_strong_l_le"]:
        q1 = ("l", *wits["locally_strong_l_le"])

    if S.inverse_table is not None and inv is not None:
        # on an inverse source, the strengths collapse as proved
        need(f["strong_r"] == f["strong_l"], "Sr <-> Sl (inverse)")
        need(f["strong_r"] == (inv and op), "Sr <-> Inv & OP (inverse)")
        for name in ("locally_strong_r_le", "locally_strong_l_le",
                     "locally_strong_r_eq", "locally_strong_l_eq"):
            need(f[name] == inv, f"{name} <-> Inv (inverse)")
        if q1 is not None:
            raise EquivalenceViolation("LSr''/LSl'' gap on inverse source", q1)
    return q1


def classify(phi: Premorph) -> PremorphReport:
    """Evaluate every strength condition of a premorphism and check the
    proved relationships among them on this instance."""
    flags, inv, wits = _flags(phi.source, phi.maps, PBIJ_OPS,
                              inverse_of=PBij.inverse)
    q1 = _assert_ladder(phi.source, flags, inv, wits)
    return PremorphReport(**flags, inverse_preserving=inv,
                          q1_witness=q1, witnesses=wits)


def classify_map_into(S: RSemigroup, T: RSemigroup, values) -> PremorphReport:
    """The same ladder for a map S -> T between restriction semigroups,
    given by target element indices."""
    inverse_of = None
    if T.inverse_table is not None:
        inverse_of = lambda t: T.inverse_table[t]
    flags, inv, wits = _flags(S, tuple(values), T, inverse_of=inverse_of)
    q1 = _assert_ladder(S, flags, inv, wits)
    return PremorphReport(**flags, inverse_preserving=inv,
                          q1_witness=q1, witnesses=wits)


# ---------------------------------------------------------------------------
# action triples and their conditions

@dataclass(frozen=True)
class ActionTriple:
    """A premorphism together with a semilattice structure on its carrier
    and a meet-preserving anchor map into the projections of the source."""

    phi: Premorph
    q: tuple[int, ...]
    lattice: Semilattice

    @property
    def source(self) -> RSemigroup:
        return self.phi.source

    @property
    def carrier(self) -> int:
        return self.phi.carrier

    def q_fiber(self, e: int) -> frozenset[int]:
        return frozenset(y for y in range(self.carrier) if self.q[y] == e)


def action_triple(phi: Premorph, q, lattice: Semilattice) -> ActionTriple:
    q = tuple(q)
    S = phi.source
    if lattice.n != phi.carrier or len(q) != phi.carrier:
        raise PreconditionFailed("carrier sizes agree",
                                 (lattice.n, phi.carrier, len(q)))
    for y, e in enumerate(q):
        if e not in S.proj_set:
            raise PreconditionFailed("q lands in the projections", (y, e))
    for y in range(lattice.n):
        for z in range(lattice.n):
            if q[lattice.meet[y][z]] != S.mul[q[y]][q[z]]:
                raise NotSemilatticeMorphism((y, z))
    return ActionTriple(phi, q, lattice)


@dataclass(frozen=True)
class ActionFlags:
    a1: bool
    a2: bool
    a3: bool
    a4: bool
    a5: bool
    a3a: bool
    a3b: bool
    witnesses: dict = field(default_factory=dict, compare=False)

    def all_a1_a4(self) -> bool:
        return self.a1 and self.a2 and self.a3 and self.a4


def check_action_conditions(t: ActionTriple) -> ActionFlags:
    """Decide the domain conditions of a triple by direct quantification.

    a1: domains and ranges are order ideals; a2: each map is an order
    isomorphism; a3: the domain of each projection's map is wedged
    between the generated ideal of its fiber and the fiber of its ideal;
    a4: every s has a domain point anchored at s*; a5 always holds and
    is asserted; a3a/a3b are the two sharper domain descriptions.
    """
    S, Y, q = t.source, t.lattice, t.q
    maps = t.phi.maps
    wits: dict[str, tuple] = {}

    a1 = True
    for s in range(S.n):
        if not (Y.is_downset(maps[s].dom) and Y.is_downset(maps[s].ran)):
            a1 = False
            wits["a1"] = (s,)
            break
    a2 = True
    for s in range(S.n):
        f = maps[s]
        for x in f.dom:
            for y in f.dom:
                if Y.le(x, y) != Y.le(f(x), f(y)):
                    a2 = False
                    wits.setdefault("a2", (s, x, y))
        if not a2:
            break
    a3 = True
    for e in S.projections:
        dom = maps[e].dom
        lower = downset(Y, t.q_fiber(e))
        upper = {y for y in range(Y.n) if S.le(q[y], e)}
        if not (lower <= dom <= upper):
            a3 = False
            wits["a3"] = (e,)
            break
    a4 = True
    for s in range(S.n):
        if not any(q[y] == S.star[s] for y in maps[s].dom):
            a4 = False
            wits["a4"] = (s,)
            break
    for s in range(S.n):
        assert maps[s].dom <= maps[S.star[s]].dom, s      # a5, forced
        assert maps[s].ran <= maps[S.plus[s]].ran, s
    a3a = True
    for s in range(S.n):
        expect = {y for u in range(S.n) if S.le(u, s)
                  for y in maps[u].dom if q[y] == S.star[u]}
        if maps[s].dom != expect:
            a3a = False
            wits["a3a"] = (s,)
            break
    a3b = True
    for s in range(S.n):
        anchored = {y for y in maps[s].dom if q[y] == S.star[s]}
        if maps[s].dom != downset(Y, anchored):
            a3b = False
            wits["a3b"] = (s,)
            break

    flags = ActionFlags(a1, a2, a3, a4, True, a3a, a3b, wits)
    if flags.all_a1_a4():
        _assert_triple_consequences(t, flags)
    return flags


def _assert_triple_consequences(t: ActionTriple, flags: ActionFlags):
    S, Y, q = t.source, t.lattice, t.q
    maps = t.phi.maps
    if flags.a3a:
        for e in S.projections:
            assert maps[e].dom == {y for y in range(Y.n) if S.le(q[y], e)}, e
        for s in range(S.n):
            for u in range(S.n):
                if S.le(s, u):
                    assert maps[s].le(maps[u]), (s, u)
    if flags.a3b:
        for e in S.projections:
            assert maps[e].dom == downset(Y, t.q_fiber(e)), e
    for s in range(S.n):
        for y in maps[s].dom:
            assert q[maps[s](y)] == S.plus[S.mul[s][q[y]]], (s, y)
            assert q[y] == S.star[S.mul[q[maps[s](y)]][s]], (s, y)


def munn_triple(S: RSemigroup) -> ActionTriple:
    """The representation of S on its own projections: s acts below s*
    by e -> (se)+.  The anchor map is the identity."""
    ps = S.projections
    maps = tuple(munn_pbij(S, s) for s in range(S.n))
    phi = check_premorphism(S, len(ps), maps)
    return action_triple(phi, ps, projection_semilattice(S))


def search_q1(max_order: int, max_carrier: int,
              count_limit: int | None = None):
    """Search small premorphisms for one whose equality-restricted local
    conditions hold while an order-restricted one fails.

    Returns (witness, checked) where witness is None when the space was
    exhausted.  A witness is reported as data, never asserted absent.
    """
    from .enumeration import (
        EnumConfig,
        enumerate_premorphisms,
        restriction_semigroups,
    )

    if count_limit is None:
        count_limit = EnumConfig().count_limit
    checked = 0
    for order in range(1, max_order + 1):
        for S in restriction_semigroups(order):
            for carrier in range(1, max_carrier + 1):
                for phi in enumerate_premorphisms(S, carrier):
                    checked += 1
                    if checked > count_limit:
                        raise SizeLimit(f"more than {count_limit} premorphisms")
                    report = classify(phi)
                    if report.q1_witness is not None:
                        return (phi, report), checked
    return None, checked
