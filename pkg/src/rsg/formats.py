"""Line-oriented text formats for algebras, semilattices, partial
bijections, premorphisms and morphisms.

Everything after a '#' is comment; blank lines are ignored; anything
left over after a document is a parse error.  File references inside
premorphism and morphism files resolve relative to the referring file.
"""

from __future__ import annotations

import os

from .core import RSemigroup, RSMorphism, check_rsmorphism, validate_restriction
from .errors import ParseError
from .partial_maps import PBij, Semilattice, validate_semilattice
from .premorphism import ActionTriple, Premorph, action_triple, check_premorphism


def _logical_lines(text: str) -> list[str]:
    out = []
    for raw in text.splitlines():
        line = raw.split("#", 1)[0].strip()
        if line:
            out.append(line)
    return out


class _Cursor:
    def __init__(self, text: str):
        self.lines = _logical_lines(text)
        self.pos = 0

    def next(self, what: str) -> str:
        if self.pos >= len(self.lines):
            raise ParseError(f"unexpected end of file, expected {what}")
        line = self.lines[self.pos]
        self.pos += 1
        return line

    def peek(self) -> str | None:
        return self.lines[self.pos] if self.pos < len(self.lines) else None

    def finish(self):
        if self.pos != len(self.lines):
            raise ParseError(f"trailing garbage: {self.lines[self.pos]!r}")


def _ints(line: str, count: int, what: str) -> list[int]:
    parts = line.split()
    if len(parts) != count:
        raise ParseError(f"expected {count} integers for {what}, got {line!r}")
    try:
        return [int(p) for p in parts]
    except ValueError:
        raise ParseError(f"non-integer in {what}: {line!r}") from None


def _tagged(cursor: _Cursor, tag: str, count: int) -> list[int]:
    line = cursor.next(f"'{tag}:' line")
    if not line.startswith(tag + ":"):
        raise ParseError(f"expected '{tag}:' line, got {line!r}")
    return _ints(line[len(tag) + 1:], count, tag)


# ---------------------------------------------------------------------------
# restriction semigroups

def parse_rsemigroup(text: str) -> RSemigroup:
    cursor = _Cursor(text)
    S = _parse_rsemigroup_at(cursor)
    cursor.finish()
    return S


def _parse_rsemigroup_at(cursor: _Cursor) -> RSemigroup:
    head = cursor.next("'rsemigroup <n>' header").split()
    if len(head) != 2 or head[0] != "rsemigroup":
        raise ParseError(f"bad header: {' '.join(head)!r}")
    try:
        n = int(head[1])
    except ValueError:
        raise ParseError(f"bad element count {head[1]!r}") from None
    mul = tuple(tuple(_ints(cursor.next("mul row"), n, "mul row"))
                for _ in range(n))
    star = tuple(_tagged(cursor, "star", n))
    plus = tuple(_tagged(cursor, "plus", n))
    labels = None
    line = cursor.peek()
    if line is not None and line.startswith("labels:"):
        cursor.next("labels")
        labels = tuple(line[len("labels:"):].split())
        if len(labels) != n:
            raise ParseError(f"expected {n} labels, got {len(labels)}")
    return validate_restriction(n, mul, star, plus, labels=labels)


def format_rsemigroup(S: RSemigroup) -> str:
    lines = [f"rsemigroup {S.n}"]
    lines += [" ".join(str(v) for v in row) for row in S.mul]
    lines.append("star: " + " ".join(str(v) for v in S.star))
    lines.append("plus: " + " ".join(str(v) for v in S.plus))
    if S.labels:
        lines.append("labels: " + " ".join(S.labels))
    return "\n".join(lines) + "\n"


# ---------------------------------------------------------------------------
# semilattices

def parse_semilattice(text: str) -> Semilattice:
    cursor = _Cursor(text)
    head = cursor.next("'semilattice <n>' header").split()
    if len(head) != 2 or head[0] != "semilattice":
        raise ParseError(f"bad header: {' '.join(head)!r}")
    n = int(head[1])
    meet = tuple(tuple(_ints(cursor.next("meet row"), n, "meet row"))
                 for _ in range(n))
    cursor.finish()
    return validate_semilattice(n, meet)


def format_semilattice(Y: Semilattice) -> str:
    lines = [f"semilattice {Y.n}"]
    lines += [" ".join(str(v) for v in row) for row in Y.meet]
    return "\n".join(lines) + "\n"


# ---------------------------------------------------------------------------
# partial bijection literals: [0>1,2>2]

def parse_pbij(literal: str, carrier: int) -> PBij:
    s = literal.strip()
    if not (s.startswith("[") and s.endswith("]")):
        raise ParseError(f"bad partial bijection literal {literal!r}")
    body = s[1:-1].strip()
    pairs = []
    if body:
        for part in body.split(","):
            if ">" not in part:
                raise ParseError(f"bad pair {part!r} in {literal!r}")
            x, y = part.split(">", 1)
            try:
                pairs.append((int(x), int(y)))
            except ValueError:
                raise ParseError(f"bad pair {part!r} in {literal!r}") from None
    seen = set()
    for x, _ in pairs:
        if x in seen:
            raise ParseError(f"duplicate point {x} in {literal!r}")
        seen.add(x)
    for x, y in pairs:
        if not (0 <= x < carrier and 0 <= y < carrier):
            raise ParseError(f"point out of carrier range in {literal!r}")
    values = [y for _, y in pairs]
    if len(set(values)) != len(values):
        raise ParseError(f"not injective: {literal!r}")
    return PBij.from_pairs(carrier, pairs)


def format_pbij(f: PBij) -> str:
    return f.literal()


# ---------------------------------------------------------------------------
# premorphisms and action triples

def parse_premorph_file(path: str) -> Premorph | ActionTriple:
    with open(path, encoding="utf-8") as fh:
        text = fh.read()
    base = os.path.dirname(os.path.abspath(path))
    cursor = _Cursor(text)
    head = cursor.next("'premorph <file> <carrier>' header").split()
    if len(head) != 3 or head[0] != "premorph":
        raise ParseError(f"bad header: {' '.join(head)!r}")
    S = load_rsemigroup(os.path.join(base, head[1]))
    carrier = int(head[2])
    maps = tuple(parse_pbij(cursor.next("partial bijection"), carrier)
                 for _ in range(S.n))
    phi = check_premorphism(S, carrier, maps)
    line = cursor.peek()
    if line is None:
        cursor.finish()
        return phi
    q = tuple(_tagged(cursor, "q", carrier))
    lat_line = cursor.next("'lattice:' line")
    if not lat_line.startswith("lattice:"):
        raise ParseError(f"expected 'lattice:' line, got {lat_line!r}")
    lattice = load_semilattice(os.path.join(base, lat_line[len("lattice:"):].strip()))
    cursor.finish()
    return action_triple(phi, q, lattice)


def format_premorph(phi: Premorph, semigroup_file: str,
                    triple: ActionTriple | None = None,
                    lattice_file: str | None = None) -> str:
    lines = [f"premorph {semigroup_file} {phi.carrier}"]
    lines += [f.literal() for f in phi.maps]
    if triple is not None:
        lines.append("q: " + " ".join(str(v) for v in triple.q))
        lines.append(f"lattice: {lattice_file}")
    return "\n".join(lines) + "\n"


# ---------------------------------------------------------------------------
# morphism files

def parse_morphism_file(path: str) -> RSMorphism:
    with open(path, encoding="utf-8") as fh:
        text = fh.read()
    base = os.path.dirname(os.path.abspath(path))
    cursor = _Cursor(text)
    head = cursor.next("'morphism <source> <target>' header").split()
    if len(head) != 3 or head[0] != "morphism":
        raise ParseError(f"bad header: {' '.join(head)!r}")
    S = load_rsemigroup(os.path.join(base, head[1]))
    T = load_rsemigroup(os.path.join(base, head[2]))
    mapping = _tagged(cursor, "map", S.n)
    cursor.finish()
    return check_rsmorphism(S, T, tuple(mapping))


# ---------------------------------------------------------------------------
# loading helpers

def load_rsemigroup(path: str) -> RSemigroup:
    with open(path, encoding="utf-8") as fh:
        return parse_rsemigroup(fh.read())


def load_semilattice(path: str) -> Semilattice:
    with open(path, encoding="utf-8") as fh:
        return parse_semilattice(fh.read())
