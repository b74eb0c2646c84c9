"""Command-line front end.

Exit codes: 0 for success, 1 for a validation failure (with a reason on
stdout), 2 for usage errors.  Output is deterministic for a given input:
plain 'key: value' lines, algebras in their text format.
"""

from __future__ import annotations

import argparse
import os
import sys

from . import category, enumeration, extension, formats, premorphism, product
from .core import RSemigroup, is_proper, is_reduced
from .errors import ParseError, PreconditionFailed, RsgError
from .premorphism import ActionTriple, Premorph


def _bool(v) -> str:
    if v is None:
        return "none"
    return "true" if v else "false"


def _first_token(path: str) -> str:
    with open(path, encoding="utf-8") as fh:
        for raw in fh:
            line = raw.split("#", 1)[0].strip()
            if line:
                return line.split()[0]
    raise ParseError("empty file")


def _load_any(path: str):
    kind = _first_token(path)
    if kind == "rsemigroup":
        return formats.load_rsemigroup(path)
    if kind == "semilattice":
        return formats.load_semilattice(path)
    if kind == "premorph":
        return formats.parse_premorph_file(path)
    if kind == "morphism":
        return formats.parse_morphism_file(path)
    raise ParseError(f"unknown document kind {kind!r}")


def cmd_validate(args, out) -> int:
    obj = _load_any(args.file)
    if isinstance(obj, RSemigroup):
        out.write(f"valid restriction semigroup, |P|={len(obj.projections)}\n")
        out.write(f"elements: {obj.n}\n")
        out.write(f"proper: {_bool(is_proper(obj))}\n")
        out.write(f"reduced: {_bool(is_reduced(obj))}\n")
    elif isinstance(obj, ActionTriple):
        out.write(f"valid action triple, carrier={obj.carrier}\n")
        flags = premorphism.check_action_conditions(obj)
        for name in ("a1", "a2", "a3", "a4", "a5", "a3a", "a3b"):
            out.write(f"{name}: {_bool(getattr(flags, name))}\n")
    elif isinstance(obj, Premorph):
        out.write(f"valid premorphism, carrier={obj.carrier}\n")
    else:  # semilattice or morphism
        from .partial_maps import Semilattice
        if isinstance(obj, Semilattice):
            out.write(f"valid semilattice, n={obj.n}\n")
            out.write(f"top: {obj.top if obj.top is not None else 'none'}\n")
        else:
            out.write("valid morphism\n")
            out.write(f"surjective: {_bool(obj.surjective)}\n")
            out.write(f"proper: {_bool(obj.proper)}\n")
            out.write(f"projection_pure: {_bool(obj.projection_pure)}\n")
    return 0


def cmd_classify(args, out) -> int:
    obj = formats.parse_premorph_file(args.file)
    phi = obj.phi if isinstance(obj, ActionTriple) else obj
    report = premorphism.classify(phi)
    out.write("premorphism: true\n")
    for name in report.names:
        out.write(f"{name}: {_bool(report.flag(name))}\n")
    if report.q1_witness is None:
        out.write("question1_witness: none\n")
    else:
        out.write(f"question1_witness: {report.q1_witness}\n")
    if isinstance(obj, ActionTriple):
        flags = premorphism.check_action_conditions(obj)
        for name in ("a1", "a2", "a3", "a4", "a5", "a3a", "a3b"):
            out.write(f"{name}: {_bool(getattr(flags, name))}\n")
    return 0


def _write_product(prod, out):
    out.write(formats.format_rsemigroup(prod.algebra))
    out.write("# pairs:\n")
    for i, (y, s) in enumerate(prod.pairs):
        out.write(f"#   {i} = ({y},{s})\n")


def cmd_product(args, out) -> int:
    obj = formats.parse_premorph_file(args.file)
    if not isinstance(obj, ActionTriple):
        raise PreconditionFailed("file carries no anchor map and lattice")
    prod = product.partial_action_product(obj)
    _write_product(prod, out)
    return 0


def cmd_decompose(args, out) -> int:
    f = formats.parse_morphism_file(args.file)
    ext = extension.proper_extension(f)
    prod, eta = extension.decompose(ext)
    _write_product(prod, out)
    out.write("eta: " + " ".join(str(v) for v in eta.map) + "\n")
    report = extension.classify_extension(ext)
    for name in report.names:
        out.write(f"{name}: {_bool(getattr(report, name))}\n")
    return 0


def cmd_enumerate(args, out) -> int:
    limit = args.limit
    if args.kind == "semilattice":
        stream = enumeration.enumerate_semilattices(
            args.order, up_to_iso=args.up_to_iso, count_limit=limit)
        for i, y in enumerate(stream):
            out.write(f"# index {i}\n")
            out.write(formats.format_semilattice(y))
    elif args.kind == "rsemigroup":
        stream = enumeration.enumerate_restriction_semigroups(
            args.order, up_to_iso=args.up_to_iso, count_limit=limit)
        for i, s in enumerate(stream):
            out.write(f"# index {i}\n")
            out.write(formats.format_rsemigroup(s))
    elif args.kind == "premorph":
        if not args.source:
            raise PreconditionFailed("--source is required for premorph")
        S = formats.load_rsemigroup(args.source)
        filters = tuple(args.filter.split(",")) if args.filter else ()
        stream = enumeration.enumerate_premorphisms(
            S, args.carrier, filters=filters, count_limit=limit)
        for i, phi in enumerate(stream):
            out.write(f"# index {i}\n")
            out.write(formats.format_premorph(phi, os.path.basename(args.source)))
    elif args.kind == "extension":
        if not args.source:
            raise PreconditionFailed("--source is required for extension")
        S = formats.load_rsemigroup(args.source)
        stream = enumeration.enumerate_proper_extensions(
            args.order, S, count_limit=limit)
        for i, e in enumerate(stream):
            out.write(f"# index {i}\n")
            out.write(formats.format_rsemigroup(e.total))
            out.write("map: " + " ".join(str(v) for v in e.psi.map) + "\n")
    else:
        raise PreconditionFailed(f"unknown kind {args.kind}")
    return 0


def cmd_category_check(args, out) -> int:
    base = os.path.dirname(os.path.abspath(args.file))
    with open(args.file, encoding="utf-8") as fh:
        lines = [ln.split("#", 1)[0].strip() for ln in fh]
    lines = [ln for ln in lines if ln]
    if not lines or lines[0] != "category-check":
        raise ParseError("expected 'category-check' header")
    objects: dict[str, category.AObject] = {}
    morphisms = []
    for line in lines[1:]:
        parts = line.split()
        if parts[0] == "object" and len(parts) == 3:
            triple = formats.parse_premorph_file(os.path.join(base, parts[2]))
            if not isinstance(triple, ActionTriple):
                raise ParseError(f"object file {parts[2]} is not an action triple")
            objects[parts[1]] = category.action_object(triple)
        elif parts[0] == "morphism" and len(parts) >= 4 and parts[2].endswith(":"):
            src, dst = parts[1], parts[2][:-1]
            mapping = tuple(int(v) for v in parts[3:])
            morphisms.append((src, dst, mapping))
        else:
            raise ParseError(f"bad line {line!r}")
    family = list(objects.values())
    bases = {o.triple.source for o in family}
    if len(bases) > 1:
        raise ParseError("objects act for different base algebras")
    for name in sorted(objects):
        o = objects[name]
        out.write(f"object {name}: in_hat={_bool(o.in_hat)}"
                  f" in_tilde={_bool(o.in_tilde)}\n")
    checked = []
    for src, dst, mapping in morphisms:
        m = category.check_amorphism(objects[src], objects[dst], mapping)
        out.write(f"morphism {src} {dst}: m1={_bool(m.m1)} m2={_bool(m.m2)}"
                  f" m3={_bool(m.m3)} valid={_bool(m.valid)}\n")
        if m.valid:
            checked.append(m)
    category.verify_functoriality(family)
    out.write("functoriality: pass\n")
    category.verify_roundtrip_isomorphism(family)
    out.write("roundtrip_isomorphism: pass\n")
    for o in family:
        category.verify_adjunction_instance(o, family)
    out.write("adjunction: pass\n")
    for o in family:
        if o.in_hat:
            e, _ = category.to_extension(o)
            ms = [m for m in checked if m.src == o and m.dst.in_hat]
            category.verify_equivalence_instance(e, o, a_morphisms=ms)
    out.write("equivalence: pass\n")
    for m in checked:
        um = category.to_extension_morphism(m)
        if um.surjective != m.m3:
            raise RsgError("m3 does not match surjectivity")
    out.write("m3_surjectivity: pass\n")
    return 0


def cmd_search_q1(args, out) -> int:
    kwargs = {}
    if args.limit is not None:
        kwargs["count_limit"] = args.limit
    witness, checked = premorphism.search_q1(args.max_order, args.max_carrier,
                                             **kwargs)
    out.write(f"searched: {checked}\n")
    if witness is None:
        out.write("witness: none\n")
    else:
        phi, report = witness
        out.write(f"witness: {report.q1_witness}\n")
        out.write(formats.format_rsemigroup(phi.source))
        for f in phi.maps:
            out.write(f.literal() + "\n")
    return 0


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(
        prog="rsg",
        description="finite restriction semigroups, partial actions, "
                    "action products and proper extensions")
    sub = p.add_subparsers(dest="verb", required=True)

    v = sub.add_parser("validate", help="validate any input file")
    v.add_argument("file")
    v.set_defaults(func=cmd_validate)

    c = sub.add_parser("classify", help="classify a premorphism file")
    c.add_argument("file")
    c.set_defaults(func=cmd_classify)

    pr = sub.add_parser("product", help="build the action product of a triple")
    pr.add_argument("file")
    pr.set_defaults(func=cmd_product)

    d = sub.add_parser("decompose", help="decompose a proper morphism")
    d.add_argument("file")
    d.set_defaults(func=cmd_decompose)

    e = sub.add_parser("enumerate", help="enumerate small structures")
    e.add_argument("--kind", required=True,
                   choices=["semilattice", "rsemigroup", "premorph", "extension"])
    e.add_argument("--order", type=int, default=2)
    e.add_argument("--carrier", type=int, default=2)
    e.add_argument("--source", help="base algebra file (premorph/extension)")
    e.add_argument("--up-to-iso", action="store_true")
    e.add_argument("--filter", help="comma-separated classification flags")
    e.add_argument("--limit", type=int, default=None)
    e.set_defaults(func=cmd_enumerate)

    cc = sub.add_parser("category-check", help="verify category facts on a diagram")
    cc.add_argument("file")
    cc.set_defaults(func=cmd_category_check)

    q = sub.add_parser("search-q1",
                       help="search for a gap between the local condition variants")
    q.add_argument("--max-order", type=int, default=2)
    q.add_argument("--max-carrier", type=int, default=2)
    q.add_argument("--limit", type=int, default=None)
    q.set_defaults(func=cmd_search_q1)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args, sys.stdout)
    except RsgError as exc:
        sys.stdout.write(f"invalid: {exc}\n")
        return 1
    except FileNotFoundError as exc:
        sys.stdout.write(f"invalid: {exc}\n")
        return 1


if __name__ == "__main__":
    sys.exit(main())
