"""Command-line front end.

Map documents come in two equivalent shapes: a block document

    trilinear-map 1
    label: example
    entry: x1*y1*z1
    entry: x0*y1*z1
    entry: x1*y0*z1
    entry: x1*y1*z0

or a single line of four semicolon-separated polynomials (the batch
shape, one document per line).  Rational numbers are always printed as
p/q strings, never floats.  Exit codes: 0 birational / success, 1 not
birational, 2 invalid input.
"""

from __future__ import annotations

import argparse
import json
import sys
from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, List, Optional, Sequence, Tuple

from .ring import MultiPoly, PolyParseError, format_poly, parse_poly
from .maps import MapValidationError, TriLinearMap
from .syzygy import new_syzygy_count
from .birational import BIRATIONAL, decide
from .inverse import InverseError, invert
from . import atlas, oracle

EXIT_OK = 0
EXIT_NOT_BIRATIONAL = 1
EXIT_INVALID = 2

FORMAT_VERSION = "1"


class InputError(ValueError):
    pass


@dataclass
class MapDocument:
    entries: Tuple[str, str, str, str]
    label: Optional[str] = None

    def to_map(self) -> TriLinearMap:
        polys = []
        for i, text in enumerate(self.entries):
            try:
                polys.append(parse_poly(text))
            except PolyParseError as exc:
                raise InputError(f"entry {i + 1}: {exc}") from exc
        try:
            return TriLinearMap(tuple(polys))
        except MapValidationError as exc:
            detail = str(exc)
            if exc.witness is not None:
                detail += f" (witness: {format_poly(exc.witness)})"
            raise InputError(detail) from exc

    def serialize(self) -> str:
        lines = [f"trilinear-map {FORMAT_VERSION}"]
        if self.label:
            lines.append(f"label: {self.label}")
        lines.extend(f"entry: {e}" for e in self.entries)
        return "\n".join(lines)


def parse_documents(text: str) -> List[MapDocument]:
    """One block document, or one inline document per nonempty line."""
    lines = [l for l in text.splitlines() if l.strip() and not l.strip().startswith("#")]
    if not lines:
        raise InputError("empty input")
    if lines[0].strip().startswith("trilinear-map"):
        label = None
        entries = []
        for line in lines[1:]:
            line = line.strip()
            if line.startswith("label:"):
                label = line.split(":", 1)[1].strip()
            elif line.startswith("entry:"):
                entries.append(line.split(":", 1)[1].strip())
            elif line.startswith("trilinear-map"):
                raise InputError("multiple block documents; use the inline batch shape")
            else:
                raise InputError(f"unrecognized document line: {line!r}")
        if len(entries) != 4:
            raise InputError(f"expected 4 entries, found {len(entries)}")
        return [MapDocument(tuple(entries), label)]
    docs = []
    for line in lines:
        parts = [p.strip() for p in line.split(";")]
        if len(parts) != 4:
            raise InputError(
                f"inline document needs 4 polynomials separated by ';', found {len(parts)}")
        docs.append(MapDocument(tuple(parts)))
    return docs


def _read_input(path: Optional[str]) -> str:
    if path is None or path == "-":
        return sys.stdin.read()
    with open(path, encoding="utf-8") as fh:
        return fh.read()


def _emit(payload: Dict, fmt: str) -> None:
    if fmt == "structured":
        print(json.dumps(payload, indent=2, sort_keys=True))
        return
    for line in _text_lines(payload):
        print(line)


def _text_lines(payload, prefix=""):
    out = []
    for key, value in payload.items():
        if isinstance(value, dict):
            out.append(f"{prefix}{key}:")
            out.extend(_text_lines(value, prefix + "  "))
        elif isinstance(value, list):
            out.append(f"{prefix}{key}:")
            for item in value:
                if isinstance(item, dict):
                    out.extend(_text_lines(item, prefix + "  "))
                else:
                    out.append(f"{prefix}  - {item}")
        else:
            out.append(f"{prefix}{key}: {value}")
    return out


def _frac(v: Fraction) -> str:
    return str(Fraction(v))


def _point_str(point) -> str:
    from .linalg import _normalize_point
    return " x ".join(
        "(" + ":".join(_frac(c) for c in _normalize_point(*pair)) + ")"
        for pair in point)


def _parse_tri(text: str) -> Tuple[int, int, int]:
    parts = text.split(",")
    if len(parts) != 3:
        raise InputError("expected a tri-degree d1,d2,d3")
    try:
        return tuple(int(p) for p in parts)
    except ValueError as exc:
        raise InputError(f"bad tri-degree {text!r}") from exc


def _parse_orbit_label(text: str) -> atlas.OrbitId:
    # (1,2,2)-7 or 1,2,2-7
    try:
        fam_text, idx_text = text.rsplit("-", 1)
        family = tuple(int(v) for v in fam_text.strip("()").split(","))
        return atlas.OrbitId(family, int(idx_text))
    except (ValueError, AttributeError) as exc:
        raise InputError(f"bad orbit label {text!r}; expected like (1,2,2)-7") from exc


def _parse_point(text: str):
    factors = text.split(";")
    if len(factors) != 3:
        raise InputError("expected a point like 1,1;1,2;1,3")
    out = []
    for f in factors:
        coords = f.split(",")
        if len(coords) != 2:
            raise InputError("each factor needs two coordinates")
        out.append(tuple(Fraction(c.strip()) for c in coords))
    return tuple(out)


# ---------------------------------------------------------------------------
# Subcommands
# ---------------------------------------------------------------------------


def _report_payload(report) -> Dict:
    payload = {
        "verdict": report.verdict,
        "type": list(report.phi_type) if report.phi_type else None,
        "branch": report.branch,
        "unit_syzygy_dims": list(report.unit_dims),
        "pair_syzygy_dims": dict(report.pair_dims),
    }
    if report.u_polys:
        payload["u_factors"] = {
            u.pair: {
                "gcd_degree": u.gcd_form.degree,
                "has_linear_factor": u.has_linear_factor,
                "rational_factor": (
                    " + ".join(f"{_frac(c)}*{u.group}{i}" for i, c in
                               enumerate(u.linear_factor.coeffs))
                    if u.linear_factor else None),
            }
            for u in report.u_polys
        }
    if report.diagnostics:
        payload["diagnostics"] = list(report.diagnostics)
    return payload


def cmd_check(args) -> int:
    docs = parse_documents(_read_input(args.file))
    worst = EXIT_OK
    for doc in docs:
        phi = doc.to_map()
        report = decide(phi)
        payload = _report_payload(report)
        if doc.label:
            payload = {"label": doc.label, **payload}
        _emit(payload, args.format)
        if report.verdict != BIRATIONAL:
            worst = max(worst, EXIT_NOT_BIRATIONAL)
    return worst


def cmd_invert(args) -> int:
    docs = parse_documents(_read_input(args.file))
    for doc in docs:
        phi = doc.to_map()
        report = decide(phi)
        if not report.is_birational:
            _emit({"error": "map is not birational",
                   "diagnostics": report.diagnostics}, args.format)
            return EXIT_NOT_BIRATIONAL
        psi, cert = invert(phi)
        payload = {
            "type": list(report.phi_type),
            "components": {
                axis: [format_poly(pair[0]), format_poly(pair[1])]
                for axis, pair in zip(("x", "y", "z"), psi.components)
            },
            "component_degrees": list(psi.phi_type),
            "certificate": {
                axis: {"passed": cert.checks[axis],
                       "cofactor": format_poly(cert.cofactors[axis])}
                for axis in ("x", "y", "z")
            },
        }
        _emit(payload, args.format)
    return EXIT_OK


def cmd_classify(args) -> int:
    docs = parse_documents(_read_input(args.file))
    worst = EXIT_OK
    for doc in docs:
        phi = doc.to_map()
        try:
            oid, method = atlas.classify_detail(phi)
        except atlas.ClassifyError as exc:
            _emit({"error": str(exc)}, args.format)
            worst = max(worst, EXIT_NOT_BIRATIONAL)
            continue
        _emit({
            "orbit": oid.label(),
            "family": list(oid.family),
            "index": oid.index,
            "permutation": list(oid.permutation),
            "method": method,
        }, args.format)
    return worst


def cmd_syzygies(args) -> int:
    box = _parse_tri(args.box)
    docs = parse_documents(_read_input(args.file))
    for doc in docs:
        phi = doc.to_map()
        table = {}
        for d1 in range(box[0] + 1):
            for d2 in range(box[1] + 1):
                for d3 in range(box[2] + 1):
                    count = new_syzygy_count(phi, (d1, d2, d3))
                    if count:
                        table[f"({d1},{d2},{d3})"] = count
        _emit({"box": list(box), "new_syzygy_generators": table}, args.format)
    return EXIT_OK


def cmd_orbits(args) -> int:
    if args.action == "list":
        for rec in atlas.representatives():
            print(f"{rec.id.label():12s} {rec.description}")
        return EXIT_OK
    if args.action == "degenerations":
        for edge in atlas.degenerations():
            src = atlas.OrbitId(*edge.src).label()
            dst = atlas.OrbitId(*edge.dst).label()
            print(f"{src} -> {dst}  [{edge.note}]")
        print("# partial list: absence of an edge is not a claim")
        return EXIT_OK
    oid = _parse_orbit_label(args.label)
    rec = atlas.record(oid.family, oid.index)
    payload = {
        "orbit": rec.id.label(),
        "description": rec.description,
        "base_locus_tridegree": list(rec.base_locus_tridegree),
        "entries": [format_poly(e) for e in rec.entries],
        "base_ideal_components": [
            [format_poly(g) for g in comp] for comp in rec.components],
    }
    _emit(payload, args.format)
    return EXIT_OK


def cmd_random(args) -> int:
    oid = _parse_orbit_label(args.orbit)
    phi = atlas.random_in_orbit(oid, args.seed)
    doc = MapDocument(tuple(format_poly(e) for e in phi.entries),
                      label=f"{oid.label()} seed={args.seed}")
    print(doc.serialize())
    return EXIT_OK


def cmd_eval(args) -> int:
    docs = parse_documents(_read_input(args.file))
    point = _parse_point(args.point)
    for doc in docs:
        phi = doc.to_map()
        image = phi.evaluate(*point)
        payload = {
            "point": _point_str(point),
            "image": "(" + " : ".join(_frac(v) for v in image) + ")",
            "on_base_locus": all(v == 0 for v in image),
        }
        _emit(payload, args.format)
    return EXIT_OK


def cmd_oracle(args) -> int:
    docs = parse_documents(_read_input(args.file))
    phi = docs[0].to_map()
    if args.action == "fiber":
        target = [Fraction(v.strip()) for v in args.target.split(",")]
        if len(target) != 4:
            raise InputError("target must have 4 coordinates a,b,c,d")
        report = oracle.fiber(phi, target, seed=args.seed, trials=args.trials)
        payload = {
            "target": "(" + " : ".join(_frac(v) for v in report.target) + ")",
            "rational_points": [_point_str(p) for p in report.rational_points],
            "complex_count": report.complex_lower_bound,
            "complex_count_exact": report.complex_exact,
            "discarded_base_points": report.discarded_base_points,
        }
        _emit(payload, args.format)
        return EXIT_OK
    if args.kind == "dominance":
        rep = oracle.dominance_sample(phi, seed=args.seed, trials=args.trials)
        passed = rep.any_passed
    else:
        rep = oracle.injectivity_sample(phi, seed=args.seed, trials=args.trials)
        passed = rep.all_passed
    payload = {"kind": args.kind, "trials": rep.trials,
               "successes": rep.successes, "passed": passed}
    if rep.witness is not None:
        payload["witness"] = repr(rep.witness)
    _emit(payload, args.format)
    return EXIT_OK


# ---------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="trilinear",
        description="Exact birationality, inverses and base-locus orbits of "
                    "tri-linear maps (P1)^3 -> P3.")
    sub = parser.add_subparsers(dest="command", required=True)

    def add_common(p, with_file=True):
        if with_file:
            p.add_argument("file", nargs="?", default="-",
                           help="map document file, or - for stdin")
        p.add_argument("--format", choices=("text", "structured"),
                       default="text")

    p = sub.add_parser("check", help="decide birationality")
    add_common(p)
    p.set_defaults(func=cmd_check)

    p = sub.add_parser("invert", help="inverse components with certificate")
    add_common(p)
    p.set_defaults(func=cmd_invert)

    p = sub.add_parser("classify", help="orbit of the base locus")
    add_common(p)
    p.set_defaults(func=cmd_classify)

    p = sub.add_parser("syzygies", help="new syzygy generator table")
    add_common(p)
    p.add_argument("--box", default="2,2,2", help="tri-degree box d1,d2,d3")
    p.set_defaults(func=cmd_syzygies)

    p = sub.add_parser("orbits", help="the 19 stored representatives")
    p.add_argument("action", choices=("list", "show", "degenerations"))
    p.add_argument("label", nargs="?", help="orbit label like (1,2,2)-7")
    p.add_argument("--format", choices=("text", "structured"), default="text")
    p.set_defaults(func=cmd_orbits)

    p = sub.add_parser("random", help="seeded random map inside an orbit")
    p.add_argument("--orbit", required=True, help="orbit label like (1,1,1)-2")
    p.add_argument("--seed", type=int, default=0)
    p.set_defaults(func=cmd_random)

    p = sub.add_parser("eval", help="apply a map to a rational point")
    add_common(p)
    p.add_argument("--point", required=True, help="point like 1,1;1,2;1,3")
    p.set_defaults(func=cmd_eval)

    p = sub.add_parser("oracle", help="independent fiber / sampling checks")
    p.add_argument("action", choices=("fiber", "sample"))
    add_common(p)
    p.add_argument("--target", help="P3 point a,b,c,d (fiber)")
    p.add_argument("--kind", choices=("dominance", "injectivity"),
                   default="dominance")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--trials", type=int, default=3)
    p.set_defaults(func=cmd_oracle)

    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        if args.command == "orbits" and args.action == "show" and not args.label:
            raise InputError("orbits show needs an orbit label")
        if args.command == "oracle" and args.action == "fiber" and not args.target:
            raise InputError("oracle fiber needs --target")
        return args.func(args)
    except (InputError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INVALID


if __name__ == "__main__":
    sys.exit(main())
