"""Command-line interface.

Subcommands:
  roots      positive roots, root poset covers and numerology of a type
  cone       regions, ceilings, flats and Poincare polynomial of a cone
             (or, with --e, of a deletion inside the dominant cone)
  verify     run the verification suites, exit 1 on any failure
  orderring  order-polytope vertices, ring presentation, Hilbert series

Output is deterministic for identical invocations.  Exit codes: 0 on
success, 1 when a verification check fails, 2 on usage or parse errors.
"""

from __future__ import annotations

import argparse
import json
import sys
from dataclasses import dataclass

from . import orderring, shi
from .posets import FinitePoset
from .rootsys import (
    CartanType,
    build_root_system,
    element_from_word,
    numerology,
    root_poset,
)
from .verify import run_suite


class UsageError(Exception):
    pass


@dataclass
class OutputRecord:
    command: str
    cartan_type: str
    payload: dict
    format: str

    def as_dict(self) -> dict:
        return {
            "command": self.command,
            "cartan_type": self.cartan_type,
            "payload": self.payload,
        }


def parse_word(text: str, rank: int) -> tuple:
    """Generator word: letters s/t in rank <= 2, digits 1..rank otherwise."""
    out = []
    for ch in text.strip():
        if ch in "st" and rank <= 2:
            out.append("st".index(ch))
        elif ch.isdigit() and 1 <= int(ch) <= rank:
            out.append(int(ch) - 1)
        else:
            raise UsageError(f"invalid generator symbol {ch!r} for rank {rank}")
    return tuple(out)


def _parse_indices(text: str, bound: int) -> list:
    if not text.strip():
        return []
    try:
        idxs = [int(part) for part in text.split(",")]
    except ValueError as exc:
        raise UsageError(f"cannot parse index list {text!r}") from exc
    for i in idxs:
        if not 0 <= i < bound:
            raise UsageError(f"root index {i} out of range 0..{bound - 1}")
    return sorted(set(idxs))


# -- serialization ------------------------------------------------------------


def _flatten(prefix: str, value, rows: list) -> None:
    if isinstance(value, dict):
        for k in sorted(value):
            _flatten(f"{prefix}.{k}" if prefix else str(k), value[k], rows)
    elif isinstance(value, list):
        if all(not isinstance(v, (dict, list)) for v in value):
            rows.append([prefix] + [str(v) for v in value])
        else:
            for i, v in enumerate(value):
                _flatten(f"{prefix}[{i}]", v, rows)
    else:
        rows.append([prefix, str(value)])


def render(record: OutputRecord) -> str:
    if record.format == "json":
        return json.dumps(record.as_dict(), sort_keys=True, indent=2) + "\n"
    if record.format == "csv":
        rows: list = []
        rows.append(["command", record.command])
        rows.append(["cartan_type", record.cartan_type])
        _flatten("", record.payload, rows)
        return "\n".join(",".join(cell for cell in row if cell != "") for row in rows) + "\n"
    lines = [f"{record.command} {record.cartan_type}".strip()]
    rows = []
    _flatten("", record.payload, rows)
    for row in rows:
        lines.append("  " + row[0] + ": " + " ".join(row[1:]))
    return "\n".join(lines) + "\n"


def emit(record: OutputRecord, out_path) -> None:
    text = render(record)
    if out_path:
        with open(out_path, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


# -- subcommands ---------------------------------------------------------------


def cmd_roots(args) -> int:
    ctype = CartanType.parse(args.type)
    rs = build_root_system(ctype)
    num = numerology(rs)
    poset = root_poset(rs)
    payload = {
        "rank": rs.rank,
        "positive_roots": [list(r) for r in rs.positive_roots],
        "root_poset_covers": sorted([a, b] for a, b in poset.cover_pairs()),
        "coxeter_number": rs.coxeter_number,
        "degrees": list(rs.degrees),
        "catalan": num.catalan,
        "parking": num.parking,
        "narayana": list(num.narayana),
    }
    emit(OutputRecord("roots", str(ctype), payload, args.format), args.out)
    return 0


def cmd_cone(args) -> int:
    ctype = CartanType.parse(args.type)
    rs = build_root_system(ctype)
    if args.e is not None:
        E = _parse_indices(args.e, len(rs.positive_roots))
        regions = shi.regions_in_dominant(rs, E)
        poset = shi.flats_in_dominant(rs, E)
        poly = root_poset(rs).restrict(E).antichain_polynomial()
        payload = {
            "e_indices": E,
            "e_roots": [list(rs.positive_roots[i]) for i in E],
            "regions": [
                {
                    "ideal": [list(rs.positive_roots[i]) for i in sorted(r.ideal)],
                    "ceiling": [list(rs.positive_roots[i]) for i in sorted(r.ceiling)],
                    "witness": [str(x) for x in r.witness],
                }
                for r in regions
            ],
            "flats": [
                {
                    "generators": [
                        list(rs.positive_roots[i]) for i in sorted(f.generators)
                    ],
                    "codim": f.geometry.codim,
                    "mobius": f.mobius,
                }
                for f in poset.flats
            ],
            "poincare": list(poly),
        }
    else:
        word = parse_word(args.word or "", rs.rank)
        w = element_from_word(rs, word)
        payload = shi.cone_report(rs, w)
    emit(OutputRecord("cone", str(ctype), payload, args.format), args.out)
    return 0


def cmd_verify(args) -> int:
    ctype = CartanType.parse(args.type)
    rs = build_root_system(ctype)
    results = run_suite(rs, theorem=args.theorem, m=args.m)
    payload = {
        "theorem": args.theorem,
        "m": args.m,
        "checks": [
            {
                "name": r.name,
                "passed": r.passed,
                "elapsed_s": round(r.elapsed, 3),
                "details": r.details,
            }
            for r in results
        ],
        "all_passed": all(r.passed for r in results),
    }
    emit(OutputRecord("verify", str(ctype), payload, args.format), args.out)
    if args.format != "text":
        for r in results:
            print(r.line(), file=sys.stderr)
    return 0 if payload["all_passed"] else 1


def _load_poset(args) -> tuple:
    if args.poset_file:
        try:
            with open(args.poset_file) as fh:
                data = json.load(fh)
            poset = FinitePoset.from_json_dict(data)
        except (OSError, json.JSONDecodeError, KeyError, TypeError, ValueError) as exc:
            raise UsageError(f"malformed poset file: {exc}") from exc
        return poset, "-"
    if args.type:
        ctype = CartanType.parse(args.type)
        rs = build_root_system(ctype)
        return root_poset(rs), str(ctype)
    raise UsageError("orderring needs --type or --poset-file")


def cmd_orderring(args) -> int:
    poset, label = _load_poset(args)
    vertices = sorted(orderring.polytope_vertices(poset))
    monomials = orderring.standard_monomials(poset)
    pos = {e: i for i, e in enumerate(poset.elements)}
    payload = {
        "elements": list(poset.elements),
        "covers": sorted(
            [pos[a], pos[b]] for a, b in poset.cover_pairs()
        ),
        "vertices": [list(v) for v in vertices],
        "generators": orderring.generator_strings(poset),
        "standard_monomials": [
            sorted(m, key=lambda e: pos[e]) for m in monomials
        ],
        "hilbert": list(orderring.hilbert_series(poset)),
    }
    emit(OutputRecord("orderring", label, payload, args.format), args.out)
    return 0


# -- entry point ----------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="shicone",
        description="Exact Shi-arrangement combinatorics in Weyl cones",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p):
        p.add_argument("--format", choices=["json", "csv", "text"], default="json")
        p.add_argument("--out", metavar="FILE", default=None)

    p = sub.add_parser("roots", help="positive roots and numerology")
    p.add_argument("--type", required=True, help="Cartan type, e.g. B2")
    common(p)
    p.set_defaults(fn=cmd_roots)

    p = sub.add_parser("cone", help="regions and flats of one cone")
    p.add_argument("--type", required=True)
    p.add_argument("--word", default="", help="generator word, e.g. st or 121")
    p.add_argument(
        "--e",
        default=None,
        help="comma-separated root indices: dominant-cone deletion instead of a cone",
    )
    common(p)
    p.set_defaults(fn=cmd_cone)

    p = sub.add_parser("verify", help="run the verification suites")
    p.add_argument("--type", required=True)
    p.add_argument("--theorem", choices=["1", "2", "3", "all"], default="all")
    p.add_argument("--m", type=int, default=1, help="extended level (rank <= 3)")
    common(p)
    p.set_defaults(fn=cmd_verify)

    p = sub.add_parser("orderring", help="order ring of a poset or root poset")
    p.add_argument("--type", default=None)
    p.add_argument("--poset-file", default=None, help="poset as JSON")
    common(p)
    p.set_defaults(fn=cmd_orderring)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.fn(args)
    except (UsageError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
