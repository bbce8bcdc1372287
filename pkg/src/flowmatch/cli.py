"""Command-line entry point.

Exit codes: 0 ok, 1 usage or unreadable path, 2 invalid input document,
3 registry conflict (duplicate or unknown service id).
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction
from pathlib import Path
from typing import Sequence

from . import maxflow
from .matchmaker import MatchReport, explain_sides, match_pair, rank
from .profile import (
    ProfileError,
    Registry,
    RegistryConflict,
    read_profile,
    read_registry,
    register_service,
    remove_service,
    validate_profile,
    write_registry,
)
from .scoring import TypeMatrixError, default_type_matrix, read_type_matrix
from .taxonomy import TaxonomyError, read_taxonomy

EXIT_OK, EXIT_USAGE, EXIT_INVALID, EXIT_CONFLICT = 0, 1, 2, 3


class UsageError(Exception):
    pass


class InvalidInput(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _existing(path: str | None, what: str) -> Path:
    if not path:
        raise UsageError(f"--{what} PATH is required")
    p = Path(path)
    if not p.is_file():
        raise UsageError(f"{what} file not found: {path}")
    return p


def _load_taxonomy(args):
    path = _existing(args.taxonomy, "taxonomy")
    try:
        return read_taxonomy(path)
    except TaxonomyError as exc:
        raise InvalidInput(f"{path}: {exc}") from None


def _load_types(args):
    if not args.types:
        return default_type_matrix()
    path = _existing(args.types, "types")
    try:
        return read_type_matrix(path)
    except TypeMatrixError as exc:
        raise InvalidInput(f"{path}: {exc}") from None


def _load_registry(args, create: bool = False) -> Registry:
    if not args.registry:
        raise UsageError("--registry PATH is required")
    path = Path(args.registry)
    if create and not path.exists():
        return Registry()
    path = _existing(args.registry, "registry")
    try:
        return read_registry(path)
    except ProfileError as exc:
        raise InvalidInput(f"{path}: {exc}") from None


def _load_profile(path_str: str, taxonomy):
    path = _existing(path_str, "profile")
    try:
        p = read_profile(path)
    except ProfileError as exc:
        raise InvalidInput(f"{path}: {exc}") from None
    issues = validate_profile(p, taxonomy)
    if issues:
        raise InvalidInput("\n".join(f"{path}: {i}" for i in issues))
    return p


def _format_pairs(pairs) -> str:
    return ", ".join(f"{a}->{b}" for a, b in pairs) or "-"


def format_report(rep: MatchReport) -> str:
    rows = [
        ("requester", rep.requester),
        ("candidate", rep.candidate),
        ("outsim", int(rep.outsim)),
        ("insim", int(rep.insim)),
        ("parsim", int(rep.parsim)),
        ("typesim", rep.typesim),
        ("final", rep.final_display),
        ("output pairs", _format_pairs(rep.output_pairs)),
        ("input pairs", _format_pairs(rep.input_pairs)),
    ]
    return "\n".join(f"{k:<13}{v}" for k, v in rows)


def format_table(reports: Sequence[MatchReport]) -> str:
    header = f"{'#':>3}  {'candidate':<24}{'out':>4}{'in':>4}{'par':>5}{'type':>6}{'final':>9}"
    lines = [header, "-" * len(header)]
    for k, r in enumerate(reports, 1):
        lines.append(
            f"{k:>3}  {r.candidate:<24}{int(r.outsim):>4}{int(r.insim):>4}"
            f"{int(r.parsim):>5}{r.typesim:>6}{r.final_display:>9}"
        )
    return "\n".join(lines)


def format_explain(panels) -> str:
    chunks = []
    for name, inst, res in panels:
        lines = [f"== {name}"]
        for i, j, w in inst.edges:
            lines.append(f"  {inst.left[i]} -- {inst.right[j]}  weight={w}")
        if not inst.edges:
            lines.append("  (no edges)")
        lines.append(f"  level: {res.level}")
        lines.append(f"  witness: {_format_pairs((inst.left[i], inst.right[j]) for i, j in res.matching)}")
        if inst.left:
            tau = res.level or min((w for _, _, w in inst.edges), default=10)
            net = maxflow.build_matching_network(inst, tau)
            flow, value = maxflow.ford_fulkerson(net)
            lines.append(f"  network at threshold {tau} (max flow {value}):")
            lines.extend("    " + ln for ln in maxflow.dump_network(net, flow).splitlines())
        chunks.append("\n".join(lines))
    return "\n".join(chunks)


def cmd_taxonomy_check(args) -> int:
    t = _load_taxonomy(args)
    print(f"{len(t)} concepts, {len(t.edges)} edges")
    return EXIT_OK


def cmd_register(args) -> int:
    t = _load_taxonomy(args)
    p = _load_profile(args.profile, t)
    r = register_service(_load_registry(args, create=True), p)
    write_registry(r, args.registry)
    print(f"registered {p.id} ({len(r)} services)")
    return EXIT_OK


def cmd_list(args) -> int:
    r = _load_registry(args)
    if args.json:
        print(json.dumps([{"id": s.id, "inputs": len(s.inputs), "outputs": len(s.outputs)} for s in r]))
        return EXIT_OK
    for s in r:
        print(f"{s.id}\tinputs={len(s.inputs)}\toutputs={len(s.outputs)}")
    return EXIT_OK


def cmd_remove(args) -> int:
    r = remove_service(_load_registry(args), args.id)
    write_registry(r, args.registry)
    print(f"removed {args.id} ({len(r)} services)")
    return EXIT_OK


def cmd_match(args) -> int:
    t = _load_taxonomy(args)
    m = _load_types(args)
    req = _load_profile(args.request, t)
    cand = _load_profile(args.candidate, t)
    rep = match_pair(req, cand, t, m)
    panels = explain_sides(req, cand, t, m) if (args.explain or args.report) else None
    if args.json:
        doc = rep.to_dict()
        if args.explain:
            doc["explain"] = [
                {
                    "graph": name,
                    "edges": [[inst.left[i], inst.right[j], w] for i, j, w in inst.edges],
                    "level": res.level,
                    "witness": [[inst.left[i], inst.right[j]] for i, j in res.matching],
                }
                for name, inst, res in panels
            ]
        print(json.dumps(doc, indent=2))
    else:
        print(format_report(rep))
        if args.explain:
            print(format_explain(panels))
    if args.report:
        from .report import write_match_report

        for p in write_match_report(rep, panels, args.report):
            print(f"wrote {p}", file=sys.stderr)
    return EXIT_OK


def cmd_rank(args) -> int:
    t = _load_taxonomy(args)
    m = _load_types(args)
    r = _load_registry(args)
    req = _load_profile(args.request, t)
    bad = [f"{s.id}: {i}" for s in r for i in validate_profile(s, t)]
    if bad:
        raise InvalidInput("\n".join(bad))
    reports = rank(req, r, t, m, args.min_final)
    if args.json:
        print(json.dumps([rep.to_dict() for rep in reports], indent=2))
    else:
        print(format_table(reports))
    if args.report:
        from .report import write_rank_report

        for p in write_rank_report(reports, args.report, f"candidates for {req.id}"):
            print(f"wrote {p}", file=sys.stderr)
    return EXIT_OK


def _threshold(text: str) -> Fraction:
    try:
        v = Fraction(text)
    except (ValueError, ZeroDivisionError):
        raise argparse.ArgumentTypeError(f"not a number: {text!r}") from None
    if not 0 <= v <= 100:
        raise argparse.ArgumentTypeError("threshold must lie in [0, 100]")
    return v


def build_parser() -> argparse.ArgumentParser:
    common = _Parser(add_help=False)
    common.add_argument("--taxonomy", metavar="PATH", help="taxonomy JSON file")
    common.add_argument("--registry", metavar="PATH", help="registry JSON file")
    common.add_argument("--types", metavar="PATH", help="type-matrix JSON file (default: built-in table)")
    common.add_argument("--json", action="store_true", help="emit JSON instead of text")

    parser = _Parser(prog="flowmatch", description="Semantic web service matchmaking and substitution ranking.")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("taxonomy-check", parents=[common], help="validate a taxonomy file")
    p.set_defaults(func=cmd_taxonomy_check)

    p = sub.add_parser("register", parents=[common], help="add a service profile to the registry")
    p.add_argument("profile", help="profile JSON file")
    p.set_defaults(func=cmd_register)

    p = sub.add_parser("list", parents=[common], help="list registered services")
    p.set_defaults(func=cmd_list)

    p = sub.add_parser("remove", parents=[common], help="delete a service from the registry")
    p.add_argument("id", help="service id")
    p.set_defaults(func=cmd_remove)

    p = sub.add_parser("match", parents=[common], help="score one candidate against a request")
    p.add_argument("request")
    p.add_argument("candidate")
    p.add_argument("--explain", action="store_true", help="print the bipartite graphs and flows")
    p.add_argument("--report", metavar="DIR", help="write match.csv and match.png into DIR")
    p.set_defaults(func=cmd_match)

    p = sub.add_parser("rank", parents=[common], help="rank registry services as substitutes")
    p.add_argument("request")
    p.add_argument("--min-final", type=_threshold, metavar="N", help="drop candidates scoring below N")
    p.add_argument("--report", metavar="DIR", help="write ranking.csv and ranking.png into DIR")
    p.set_defaults(func=cmd_rank)
    return parser


def main(argv: Sequence[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except UsageError as exc:
        print(f"flowmatch: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except InvalidInput as exc:
        print(f"flowmatch: invalid input:\n{exc}", file=sys.stderr)
        return EXIT_INVALID
    except RegistryConflict as exc:
        print(f"flowmatch: {exc}", file=sys.stderr)
        return EXIT_CONFLICT


if __name__ == "__main__":
    sys.exit(main())
