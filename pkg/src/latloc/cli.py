"""Command-line front end: ingest, mine, lattice, explore, ngram, corpus, deps.

The pipeline is staged through files (context -> rules -> lattice -> session)
so every intermediate artifact can be inspected. All outputs are JSON with a
top-level ``"format": 1`` and are byte-identical across runs for identical
flags and seed. Exit codes: 0 success, 2 validation error.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from fractions import Fraction
from pathlib import Path

from latloc import corpus as corpus_mod
from latloc import failure_lattice as fl_mod
from latloc import ngram as ngram_mod
from latloc import rules as rules_mod
from latloc.errors import LatlocError
from latloc.trace_model import (
    KIND_EVENT,
    KIND_LINE,
    Item,
    dump_trace_context,
    load_trace_context,
)

FORMAT = 1


def _dump(payload: dict, path: str | None) -> None:
    text = json.dumps(payload, sort_keys=True, separators=(",", ":")) + "\n"
    if path is None or path == "-":
        sys.stdout.write(text)
    else:
        Path(path).write_text(text)


def _fraction(text: str) -> Fraction:
    try:
        return Fraction(text)
    except (ValueError, ZeroDivisionError) as exc:
        raise argparse.ArgumentTypeError(f"not a rational: {text!r}") from exc


def _seed(args) -> int:
    env = os.environ.get("LATLOC_SEED")
    if env is not None:
        return int(env)
    return args.seed


def cmd_ingest(args) -> int:
    ctx = load_trace_context(args.input, mode=args.mode, item_kind=args.kind)
    if args.out:
        dump_trace_context(ctx, args.out)
    _dump(
        {
            "format": FORMAT,
            "tests": len(ctx.executions),
            "failing": len(ctx.failing),
            "items": len(ctx.items),
            "mode": ctx.mode,
        },
        None,
    )
    return 0


def cmd_mine(args) -> int:
    ctx = load_trace_context(args.input, mode="coverage", item_kind=args.kind)
    mined = rules_mod.mine_failure_rules(ctx, min_sup=args.min_sup, min_lift=args.min_lift)
    _dump(
        {
            "format": FORMAT,
            "min_sup": args.min_sup,
            "min_lift": str(args.min_lift),
            "rules": [
                {
                    "premise": [it.id for it in rule.sorted_premise],
                    "support": rule.stats.support,
                    "normalized_support": str(rule.stats.normalized_support),
                    "confidence": str(rule.stats.confidence),
                    "lift": str(rule.stats.lift),
                }
                for rule in mined
            ],
        },
        args.out,
    )
    return 0


def _rules_from_entries(entries: list[dict], kind: str) -> list[rules_mod.FailureRule]:
    out = []
    for entry in entries:
        stats = rules_mod.RuleStats(
            support=entry["support"],
            normalized_support=Fraction(entry.get("normalized_support", 0)),
            confidence=Fraction(entry["confidence"]),
            lift=Fraction(entry["lift"]),
        )
        premise = frozenset(Item(kind, i) for i in entry["premise"])
        out.append(rules_mod.FailureRule(premise, stats))
    if not out:
        raise LatlocError("rule file holds no rules")
    return out


def _rules_from_file(path: str, kind: str) -> list[rules_mod.FailureRule]:
    payload = json.loads(Path(path).read_text())
    return _rules_from_entries(payload["rules"], kind)


def cmd_lattice(args) -> int:
    payload_in = json.loads(Path(args.rules).read_text())
    mined = _rules_from_entries(payload_in["rules"], args.kind)
    fl = fl_mod.build_failure_lattice(mined)
    failing = None
    if args.context:
        ctx = load_trace_context(args.context, mode="coverage", item_kind=args.kind)
        failing = [ex.coverage for ex in ctx.failing]
    payload = {"format": FORMAT, "rules": payload_in["rules"]}
    payload.update(fl_mod.failure_lattice_to_json(fl, failing))
    _dump(payload, args.out)
    if args.dot:
        Path(args.dot).write_text(fl.lattice.export_dot())
    return 0


def cmd_ngram(args) -> int:
    kind = KIND_LINE if args.mode == "line" else KIND_EVENT
    ctx = load_trace_context(args.input, mode="sequence", item_kind=kind)
    sequences = [ex.sequence for ex in ctx.executions]
    verdicts = [ex.verdict for ex in ctx.executions]
    if args.mode == "line":
        report = ngram_mod.localize_lines(sequences, verdicts, args.min_sup, args.nmax)
    else:
        report = ngram_mod.localize_events(sequences, verdicts, args.min_sup, args.nmax)

    payload = {
        "format": FORMAT,
        "mode": report.mode,
        "items": [{"item": it.id, "rank": rank} for it, rank in report.items],
        "grams": [
            {
                "gram": [g.id if isinstance(g, Item) else g for g in rec.gram],
                "support": rec.support,
                "total": rec.total,
                "confidence": str(rec.confidence),
                "items": [it.id for it in rec.items],
            }
            for rec in report.grams
        ],
        "tie_groups": [
            {
                "confidence": str(tg.confidence),
                "grams": list(tg.gram_indices),
                "new_items": [it.id for it in tg.new_items],
            }
            for tg in report.tie_groups
        ],
        "best_worst": None,
        "not_localized": [],
    }
    if args.ground_truth:
        truth_ids = json.loads(Path(args.ground_truth).read_text())
        counts = {Item(kind, int(k)): int(v) for k, v in truth_ids.items()}
        envelope = ngram_mod.best_worst_ranks(report, counts, seed=_seed(args))
        payload["best_worst"] = {
            str(item.id): [best, worst] for item, (best, worst) in sorted(envelope.ranks.items())
        }
        payload["best_order"] = [it.id for it in envelope.best_order]
        payload["worst_order"] = [it.id for it in envelope.worst_order]
        payload["not_localized"] = sorted(it.id for it in envelope.not_localized)
    _dump(payload, args.out)
    return 0


def cmd_corpus(args) -> int:
    variants = tuple(int(v) for v in args.mutants.split(",") if v.strip()) if args.mutants else ()
    spec = corpus_mod.SuiteSpec(
        program=args.program,
        variants=variants,
        grid=args.grid,
        extra=args.extra,
        seed=_seed(args),
    )
    if args.program == "mid" and args.demo_suite:
        ctx = corpus_mod.mid_demo_suite()
        dump_trace_context(ctx, args.out)
        _dump({"format": FORMAT, "tests": len(ctx.executions), "failing": len(ctx.failing)}, None)
        return 0
    suite = corpus_mod.generate_context(spec)
    dump_trace_context(suite.context, args.out)
    if args.truth:
        _dump(
            {
                "format": FORMAT,
                "program": args.program,
                "mutations": {
                    str(v): {
                        "line": corpus_mod.PROGRAMS[args.program].mutations[v][0],
                        "failing": sorted(ids),
                    }
                    for v, ids in suite.truth.items()
                },
                "inputs": {tid: list(inp) for tid, inp in suite.inputs.items()},
            },
            args.truth,
        )
    _dump(
        {
            "format": FORMAT,
            "tests": len(suite.context.executions),
            "failing": len(suite.context.failing),
        },
        None,
    )
    return 0


def cmd_deps(args) -> int:
    truth = json.loads(Path(args.truth).read_text())
    mutations = truth["mutations"]
    ids = sorted(mutations, key=int)
    pairs = []
    for a_pos, a in enumerate(ids):
        for b in ids[a_pos + 1 :]:
            dep = fl_mod.classify_dependency(mutations[a]["failing"], mutations[b]["failing"])
            pairs.append(
                {"first": a, "second": b, "kind": dep.kind, "direction": dep.direction}
            )
    _dump({"format": FORMAT, "pairs": pairs}, args.out)
    return 0


def cmd_explore(args) -> int:
    from latloc import server as server_mod

    state = server_mod.ExplorerState.from_files(
        args.lattice, args.context, strategy=args.strategy, kind=args.kind
    )
    if args.serve is not None:
        httpd = server_mod.make_server(state, args.serve, static_dir=args.static)
        host, port = httpd.server_address[:2]
        print(f"serving explorer on http://{host}:{port}/ (Ctrl-C to stop)")
        try:
            httpd.serve_forever()
        except KeyboardInterrupt:
            pass
        finally:
            httpd.server_close()
        return 0
    return _explore_terminal(state)


def _explore_terminal(state) -> int:
    from latloc.failure_lattice import apply_decision, next_concept

    session = state.session
    fl = state.lattice
    while session.failures_to_explain and session.frontier:
        presented = next_concept(session, fl)
        ann = fl.annotations.get(presented.concept)
        stats = f"support={ann.support} lift={ann.lift}" if ann else "unannotated"
        print(f"concept {presented.concept} ({stats})")
        print("  label:", ", ".join(it.display for it in presented.label) or "(none)")
        print("  fault context so far:", ", ".join(it.display for it in session.fault_context))
        while True:
            answer = input("  fault located? [f <ids> | n | q] ").strip()
            if answer == "q":
                return 0
            if answer == "n":
                apply_decision(session, fl, presented.concept, "no_fault")
                break
            if answer.startswith("f"):
                try:
                    ids = [int(tok) for tok in answer[1:].replace(",", " ").split()]
                except ValueError:
                    print("  could not parse item ids")
                    continue
                items = [it for it in presented.label if it.id in ids] or list(presented.label)
                apply_decision(session, fl, presented.concept, "fault_located", items)
                break
            print("  expected 'f <ids>', 'n' or 'q'")
    print(
        "exploration finished:",
        "all failure concepts explained"
        if not session.failures_to_explain
        else "frontier exhausted",
    )
    print("inspected items:", len(session.fault_context))
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="latloc", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("ingest", help="validate and normalize a trace file")
    p.add_argument("--in", dest="input", required=True)
    p.add_argument("--mode", choices=["coverage", "sequence"], default="coverage")
    p.add_argument("--kind", choices=["line", "event"], default="line")
    p.add_argument("--out")
    p.set_defaults(func=cmd_ingest)

    p = sub.add_parser("mine", help="mine failure rules from a trace context")
    p.add_argument("--in", dest="input", required=True)
    p.add_argument("--min-sup", dest="min_sup", type=int, default=1)
    p.add_argument("--min-lift", dest="min_lift", type=_fraction, default=Fraction(1))
    p.add_argument("--kind", choices=["line", "event"], default="line")
    p.add_argument("--out")
    p.set_defaults(func=cmd_mine)

    p = sub.add_parser("lattice", help="build the annotated failure lattice")
    p.add_argument("--rules", required=True)
    p.add_argument("--context", help="trace file; enables failure-concept marking")
    p.add_argument("--kind", choices=["line", "event"], default="line")
    p.add_argument("--out")
    p.add_argument("--dot")
    p.set_defaults(func=cmd_lattice)

    p = sub.add_parser("explore", help="drive the exploration session")
    p.add_argument("--lattice", required=True, help="lattice JSON from `latloc lattice`")
    p.add_argument("--context", required=True, help="trace file with the failing runs")
    p.add_argument("--strategy", choices=["queue", "stack"], default="queue")
    p.add_argument("--kind", choices=["line", "event"], default="line")
    p.add_argument("--serve", type=int, nargs="?", const=8177, default=None, metavar="PORT")
    p.add_argument("--static", help="directory with the explorer UI build")
    p.set_defaults(func=cmd_explore)

    p = sub.add_parser("ngram", help="N-gram localization over sequences")
    p.add_argument("--in", dest="input", required=True)
    p.add_argument("--mode", choices=["line", "event"], default="line")
    p.add_argument("--min-sup", dest="min_sup", type=_fraction, default=Fraction(9, 10))
    p.add_argument("--nmax", type=int, default=3)
    p.add_argument("--ground-truth", dest="ground_truth")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--out")
    p.set_defaults(func=cmd_ngram)

    p = sub.add_parser("corpus", help="generate benchmark contexts + ground truth")
    p.add_argument("--program", choices=["trityp", "mid"], required=True)
    p.add_argument("--mutants", default="", help="comma-separated mutation ids")
    p.add_argument("--grid", type=int, default=7)
    p.add_argument("--extra", type=int, default=50)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--demo-suite", action="store_true", help="mid: bundled six-test suite")
    p.add_argument("--out", required=True)
    p.add_argument("--truth")
    p.set_defaults(func=cmd_corpus)

    p = sub.add_parser("deps", help="classify fault dependencies from ground truth")
    p.add_argument("--truth", required=True)
    p.add_argument("--out")
    p.set_defaults(func=cmd_deps)

    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except LatlocError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except FileNotFoundError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
