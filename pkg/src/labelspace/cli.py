"""Command-line front end: ``analyze``, ``check`` and ``oracle``."""

from __future__ import annotations

import argparse
import json
import sys

from . import report as rp
from .accommodating import DEFAULT_FAMILY_CAP, bar_e, smallest_accommodating
from .automaton import DEFAULT_STATE_CAP, range_automaton, to_dot
from .cofinality import check_cofinality, check_strong_cofinality
from .disagreeable import disagreeable_space
from .errors import GraphParseError, LabelSpaceError, ResourceError, ValidationError
from .graph import LabelledGraph, parse_graph, require_valid
from .verdict import NOT_APPLICABLE, UNKNOWN, simplicity_verdict
from .wlr import DEFAULT_PAIR_CAP, check_wlr

EXIT_DECIDED, EXIT_ERROR, EXIT_UNKNOWN, EXIT_NOT_APPLICABLE = 0, 1, 2, 3

PROPERTIES = ("wlr", "cofinal", "strong-cofinal", "disagreeable", "accommodating", "omega")


def _positive(text: str) -> int:
    value = int(text)
    if value <= 0:
        raise argparse.ArgumentTypeError("caps must be positive")
    return value


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--cap-states", type=_positive, default=DEFAULT_STATE_CAP,
                        help="subset automaton state cap")
    common.add_argument("--cap-family", type=_positive, default=DEFAULT_FAMILY_CAP,
                        help="explicit family size cap")
    common.add_argument("--cap-pairs", type=_positive, default=DEFAULT_PAIR_CAP,
                        help="pair count cap for weak left-resolving checks")
    common.add_argument("--format", choices=("text", "json"), default="text")
    common.add_argument("--dot", metavar="FILE", help="write the range automaton as DOT to FILE")

    parser = argparse.ArgumentParser(prog="labelspace",
                                     description="Exact analysis of finite labelled graphs.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("analyze", parents=[common], help="full simplicity analysis")
    p.add_argument("file")

    p = sub.add_parser("check", parents=[common], help="run a single checker")
    p.add_argument("property", choices=PROPERTIES)
    p.add_argument("file")
    p.add_argument("--replay", metavar="WITNESS_FILE",
                   help="re-verify witnesses from a report or witness JSON file")

    p = sub.add_parser("oracle", help="compare deciders with brute-force oracles on random graphs")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--cases", type=_positive, default=200)
    p.add_argument("--max-vertices", type=_positive, default=6)
    p.add_argument("--max-labels", type=_positive, default=3)
    p.add_argument("--levels", type=_positive, default=4,
                   help="largest level for disagreeable block comparisons")
    p.add_argument("--budget", type=_positive, default=20_000,
                   help="exploration budget of the brute-force oracles")
    return parser


def load_graph(path: str) -> LabelledGraph:
    with open(path, encoding="utf-8") as fh:
        text = fh.read()
    g = parse_graph(text)
    require_valid(g)
    return g


def _emit(args, data: dict, text: str):
    if args.format == "json":
        sys.stdout.write(rp.dumps(data))
    else:
        sys.stdout.write(text)


def cmd_analyze(args) -> int:
    g = load_graph(args.file)
    _maybe_dot(args, g)
    rep = simplicity_verdict(g, state_cap=args.cap_states, pair_cap=args.cap_pairs)
    data = rp.build_report(g, rep)
    _emit(args, data, rp.render_text(data))
    if rep.verdict == UNKNOWN:
        return EXIT_UNKNOWN
    if rep.verdict == NOT_APPLICABLE:
        return EXIT_NOT_APPLICABLE
    return EXIT_DECIDED


def _maybe_dot(args, g):
    if getattr(args, "dot", None):
        with open(args.dot, "w", encoding="utf-8") as fh:
            fh.write(to_dot(range_automaton(g, args.cap_states)))


def _check_data(args, g: LabelledGraph) -> dict:
    which = args.property
    if which == "omega":
        return {"omega": rp.omega_report(g)}
    if which == "accommodating":
        fam = smallest_accommodating(g, cap=args.cap_family, state_cap=args.cap_states)
        return {"accommodating": {"size": len(fam), "members": [g.ids(m) for m in fam.members]}}
    if which == "wlr":
        smallest = check_wlr(g, smallest_accommodating(g, cap=args.cap_family, state_cap=args.cap_states),
                             pair_cap=args.cap_pairs)
        blocks = check_wlr(g, bar_e(g, args.cap_states), exhaustive=True, pair_cap=args.cap_pairs)
        return {"wlr": {"smallest": smallest.holds, "blocks": blocks.holds},
                "witnesses": rp.wlr_witnesses(g, smallest, "smallest") + rp.wlr_witnesses(g, blocks, "blocks")}
    if which in ("cofinal", "strong-cofinal"):
        check = check_strong_cofinality if which == "strong-cofinal" else check_cofinality
        v = check(g, args.cap_states)
        return {which: v.holds, "witnesses": rp.cofinality_witness(g, v)}
    v = disagreeable_space(g, args.cap_states)
    return {"disagreeable": v.space_disagreeable,
            "evidence": [e.as_dict(g) for e in v.evidence],
            "witnesses": rp.disagreeable_witness(g, v)}


def _check_text(data: dict) -> str:
    lines = []
    if "omega" in data:
        om = data["omega"]
        for level, blocks in om["levels"].items():
            lines.append(f"omega_{level}: " + " ".join("{" + ",".join(b) + "}" for b in blocks))
        lines.append("limit: " + " ".join("{" + ",".join(b) + "}" for b in om["limit_partition"]))
        lines.append(f"l* = {om['lstar']}")
    elif "accommodating" in data:
        acc = data["accommodating"]
        lines.append(f"smallest accommodating family: {acc['size']} nonempty member(s)")
        lines.extend("  {" + ",".join(m) + "}" for m in acc["members"])
    elif "wlr" in data:
        lines.append(f"weakly left-resolving (smallest family): {data['wlr']['smallest']}")
        lines.append(f"weakly left-resolving (blocks): {data['wlr']['blocks']}")
    elif "evidence" in data:
        lines.append(f"disagreeable: {data['disagreeable']}")
        for ev in data["evidence"]:
            head = "{" + ",".join(ev["block"]) + "}"
            if ev["sequences"] == "infinite":
                lines.append(f"  {head}: infinitely many sequences")
            else:
                seqs = ", ".join(f"{x['prefix'] or 'ε'} ({x['cycle']})^inf period={x['least_pure_period']}"
                                 for x in ev["lassos"])
                lines.append(f"  {head}: {seqs}")
    else:
        key = next(k for k in data if k != "witnesses")
        lines.append(f"{key}: {data[key]}")
    for w in data.get("witnesses", []):
        lines.append("witness: " + rp.render_witness(w))
    return "\n".join(lines) + "\n"


def cmd_check(args) -> int:
    g = load_graph(args.file)
    _maybe_dot(args, g)
    if args.replay:
        with open(args.replay, encoding="utf-8") as fh:
            witnesses = rp.witnesses_from(json.load(fh))
        ok = True
        for w in witnesses:
            good = rp.replay_witness(g, w)
            ok &= good
            print(f"{'verified' if good else 'FAILED'}: {rp.render_witness(w)}")
        return EXIT_DECIDED if ok else EXIT_ERROR
    data = _check_data(args, g)
    _emit(args, data, _check_text(data))
    return EXIT_DECIDED


def cmd_oracle(args) -> int:
    from .oracles import run_suite
    result = run_suite(args.seed, args.cases, args.max_vertices, args.max_labels, args.levels,
                       args.budget)
    print(result.summary())
    return EXIT_DECIDED if result.ok else EXIT_ERROR


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    handlers = {"analyze": cmd_analyze, "check": cmd_check, "oracle": cmd_oracle}
    try:
        return handlers[args.command](args)
    except OSError as exc:
        print(f"error: cannot read input: {exc}", file=sys.stderr)
    except GraphParseError as exc:
        print(f"error: parse error: {exc}", file=sys.stderr)
    except ValidationError as exc:
        print(f"error: invalid graph: {exc}", file=sys.stderr)
    except ResourceError as exc:
        print(f"error: resource limit: {exc}", file=sys.stderr)
    except (LabelSpaceError, ValueError, KeyError) as exc:
        print(f"error: {exc}", file=sys.stderr)
    return EXIT_ERROR


if __name__ == "__main__":
    sys.exit(main())
