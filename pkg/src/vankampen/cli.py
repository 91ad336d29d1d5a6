"""Command line front end.

Exit codes: 0 pass, 1 invalid document, 2 hypothesis failure, 3 fingerprint
mismatch or exhausted budget. Every report ends with a JSON summary block.
"""

from __future__ import annotations

import argparse
import json
import os
import sys

from .colimits import abelian_invariants, vertex_group
from .documents import base_set_of, corpus_names, load
from .errors import BudgetError, DocumentError, HypothesisError
from .groups import DEFAULT_BUDGET
from .pi1 import pi1
from .presentation import format_id, sort_key
from .vkcheck import Bounds, VkConfig, crosscheck_section4, random_instance, run_vk

EXIT_OK, EXIT_INVALID, EXIT_HYPOTHESIS, EXIT_MISMATCH = 0, 1, 2, 3
SUMMARY_MARK = "--- summary ---"


def _budget_default() -> int:
    raw = os.environ.get("VK_BUDGET")
    return int(raw) if raw else DEFAULT_BUDGET


def _config(args) -> VkConfig:
    return VkConfig(fingerprint_order=args.fingerprint_order, hom_budget=args.budget)


def _base_set(inst, spec):
    if spec is None:
        return inst.base_set
    if spec == "all":
        return inst.complex.vertex_set
    return base_set_of(inst.complex, spec.split(",") if "," in spec else spec)


def _ids(xs):
    return ", ".join(format_id(x) for x in sorted(xs, key=sort_key))


def _emit(out, lines, summary):
    for line in lines:
        print(line, file=out)
    print(SUMMARY_MARK, file=out)
    print(json.dumps(summary, indent=2, sort_keys=True), file=out)


def cmd_pi1(args, out) -> int:
    inst = load(args.file)
    S = _base_set(inst, args.base_set)
    try:
        P = pi1(inst.complex, S)
    except HypothesisError as exc:
        _emit(out, [f"hypothesis failure: {exc}"], {"status": "hypothesis", "components": [format_id(c) for c in exc.components]})
        return EXIT_HYPOTHESIS
    g = P.presentation
    lines = [f"pi1 of {inst.name} on {{{_ids(P.base)}}}", g.describe(), "witness paths:"]
    for a in g.sorted_arrows():
        lines.append(f"  {format_id(a)}: {P.witness[a]}")
    lines.append("vertex groups:")
    invariants = {}
    for o in g.objects:
        inv = abelian_invariants(vertex_group(g, o))
        invariants[format_id(o)] = inv.as_tuple()
        lines.append(f"  {format_id(o)}: {inv}")
    summary = {"status": "ok", "objects": len(g.objects), "generators": len(g.arrows),
               "relators": len(g.relators), "invariants": invariants}
    _emit(out, lines, summary)
    return EXIT_OK


def _vk_lines(report):
    lines = [f"status: {report.status}", report.message]
    for b, (fq, fb) in report.fingerprints.items():
        lines.append(f"  {format_id(b)}: coequalizer {fq}")
        lines.append(f"  {' ' * len(format_id(b))}  direct      {fb}")
    if report.status != "hypothesis":
        lines.append(f"round trips: {report.round_trips.as_dict()}  methods: "
                     + ", ".join(f"{k}={v}" for k, v in sorted(report.methods.items())))
    return lines


def cmd_vk(args, out) -> int:
    inst = load(args.file)
    if args.mode == "all":
        S = inst.complex.vertex_set
    elif args.mode == "point":
        S = _base_set(inst, args.base_set)
        if len(S) != 1:
            S = frozenset([min(S, key=sort_key)])
    else:
        S = _base_set(inst, args.base_set)
    _, _, report = run_vk(inst.cover, S, _config(args))
    lines = [f"van kampen check of {inst.name}, mode {args.mode}, S = {{{_ids(S)}}}"] + _vk_lines(report)
    summary = report.summary()
    if report.status == "hypothesis":
        summary["components"] = [[format_id(r), format_id(b)] for r, b in report.failing_components]
    _emit(out, lines, summary)
    return {"pass": EXIT_OK, "hypothesis": EXIT_HYPOTHESIS}.get(report.status, EXIT_MISMATCH)


def cmd_crosscheck(args, out) -> int:
    inst = load(args.file)
    S = _base_set(inst, args.base_set)
    report = crosscheck_section4(inst.cover, S, _config(args))
    lines = [f"cross-check of {inst.name}, S = {{{_ids(S)}}}", report.verdict]
    for name, (eff, rep) in report.pipelines.items():
        lines.append(f"  {name}: {rep.status} (S = {{{_ids(eff)}}})")
        for b, fp in report.fingerprints.get(name, {}).items():
            lines.append(f"    {format_id(b)}: {fp}")
    lines.extend(f"note: {n}" for n in report.notes)
    _emit(out, lines, report.summary())
    if report.ok:
        return EXIT_OK
    return EXIT_MISMATCH


def cmd_sweep(args, out) -> int:
    config = _config(args)
    counts = {"pass": 0, "mismatch": 0, "hypothesis": 0}
    unknown = distinct = 0
    lines = []
    for k in range(args.trials):
        seed = args.seed + k
        B, c, S = random_instance(seed, Bounds())
        _, _, rep = run_vk(c, S, config)
        counts[rep.status] += 1
        unknown += rep.round_trips.unknown + rep.well_defined.unknown
        distinct += rep.round_trips.distinct + rep.well_defined.distinct
        lines.append(f"seed {seed}: {B.describe()}, |S| = {len(S)}: {rep.status}")
    _emit(out, lines, {"instances": args.trials, "seed": args.seed, **counts,
                       "distinct": distinct, "unknown": unknown})
    return EXIT_OK if counts["pass"] == args.trials else EXIT_MISMATCH


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="vankampen", description=__doc__.splitlines()[0])
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--budget", type=int, default=_budget_default(),
                        help="relator evaluations per homomorphism search (env VK_BUDGET)")
    common.add_argument("--fingerprint-order", type=int, default=8,
                        help="largest group order used in fingerprints (max 12)")
    sub = parser.add_subparsers(dest="command", required=True)

    corpus = ", ".join(corpus_names())
    for name, helptext in (("pi1", "print pi1(B, S)"), ("vk", "run the Van Kampen check"),
                           ("crosscheck", "compare with the coproduct-of-pieces construction")):
        p = sub.add_parser(name, parents=[common], help=helptext)
        p.add_argument("file", help=f"instance document, or a corpus name ({corpus})")
        p.add_argument("--base-set", help='"all", a vertex, or a comma-separated list')
        if name == "vk":
            p.add_argument("--mode", choices=["set", "all", "point"], default="set")
    p = sub.add_parser("sweep", parents=[common], help="run the check on random instances")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--trials", type=int, default=20)
    return parser


COMMANDS = {"pi1": cmd_pi1, "vk": cmd_vk, "crosscheck": cmd_crosscheck, "sweep": cmd_sweep}


def main(argv=None, out=None) -> int:
    out = out or sys.stdout
    args = build_parser().parse_args(argv)
    try:
        return COMMANDS[args.command](args, out)
    except DocumentError as exc:
        _emit(out, [f"invalid document: {exc}"], {"status": "invalid", "error": str(exc)})
        return EXIT_INVALID
    except BudgetError as exc:
        _emit(out, [f"budget exhausted: {exc}"], {"status": "budget", "error": str(exc)})
        return EXIT_MISMATCH


if __name__ == "__main__":
    sys.exit(main())
