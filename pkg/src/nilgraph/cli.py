"""Command-line front end: ``nilgraph <subcommand> [options]``.

Exit status is 0 on success, 1 when a verification fails and 2 on a usage
error (bad arguments, unparsable group spec, budget exceeded).
"""
from __future__ import annotations

import argparse
import json
import os
import sys
from pathlib import Path

from . import checks, counting, embedder, randperm
from .graph import (
    build_nilgraph,
    degree_sequence,
    induced_subgraph,
    from_json,
    nonnilpotent_graph,
    parse_edge_list,
    to_dot,
    to_json,
)
from .group import BudgetError, DEFAULT_BUDGET, GroupSpecError, hypercenter, make_group
from .perm import format_cycles, parse_cycles

OK, FAILED, USAGE = 0, 1, 2
EMBED_BUDGET = 10**4


class UsageError(Exception):
    pass


def _default_workers() -> int:
    try:
        return len(os.sched_getaffinity(0))
    except AttributeError:  # pragma: no cover - not on Linux
        return os.cpu_count() or 1


def _emit(args, text: str):
    if args.out:
        Path(args.out).write_text(text if text.endswith("\n") else text + "\n")
    else:
        print(text)


def _need(args, name: str):
    value = getattr(args, name)
    if value is None:
        raise UsageError(f"--{name} is required for '{args.command}'")
    return value


def _group(args):
    return make_group(_need(args, "group"), args.budget or DEFAULT_BUDGET)


def cmd_graph(args) -> int:
    G = _group(args)
    g = build_nilgraph(G) if args.all_vertices else nonnilpotent_graph(G)
    if args.format == "dot":
        _emit(args, to_dot(g))
    elif args.format == "json":
        _emit(args, to_json(g))
    else:
        lines = [f"{G.label}: {g.n} vertices, {g.n_edges} edges"]
        lines += [f"{g.labels[i]} -- {g.labels[j]}" for i, j in g.edges()]
        _emit(args, "\n".join(lines))
    return OK


def cmd_degrees(args) -> int:
    if args.group is None and args.n is not None:
        rep = randperm.prime_order_degree_report(args.n)
        rows = [
            {
                "cycle_type": list(r.cycle_type.parts),
                "representative": format_cycles(r.representative),
                "degree": r.degree,
                "nilpotent_fraction": str(r.fraction),
                "at_least_half": r.at_least_half,
            }
            for r in rep.rows
        ]
        if args.format == "json":
            _emit(args, json.dumps({"n": args.n, "rows": rows, "holds": rep.holds}))
        else:
            lines = [f"prime-order elements of S{args.n} (degree in the graph on all of S{args.n})"]
            lines += [
                f"{r['representative']:>20}  degree {r['degree']:>6}  nilpotent fraction {r['nilpotent_fraction']}"
                for r in rows
            ]
            lines.append(f"every degree at least half the group: {rep.holds}")
            _emit(args, "\n".join(lines))
        return OK
    G = _group(args)
    g = nonnilpotent_graph(G)
    seq = degree_sequence(g)
    z = hypercenter(G).order
    if args.format == "json":
        _emit(args, json.dumps({"group": G.label, "hypercenter": z, "degrees": dict(zip(g.labels, seq))}))
    else:
        lines = [f"{G.label}: |G| = {G.order}, |Z*| = {z}, {g.n} vertices"]
        lines += [f"{lab:>24}  {d}" for lab, d in zip(g.labels, seq)]
        _emit(args, "\n".join(lines))
    return OK


def cmd_verify(args) -> int:
    names = list(checks.SUITES) if args.suite == "all" else [args.suite]
    results = [
        checks.run_suite(name, n=args.n, p=args.p, budget=args.budget)
        for name in names
    ]
    if args.format == "json":
        _emit(args, json.dumps([r.to_dict() for r in results]))
    else:
        _emit(args, "\n\n".join(r.to_text() for r in results))
    return OK if all(r.ok for r in results) else FAILED


def cmd_count(args) -> int:
    n = _need(args, "n")
    rows = [
        {"type": str(t), "count": counting.count_nilpotent_partners_distinct(t), "even": t.even}
        for t in counting.prime_partitions(n)
    ]
    for ps in counting._two_twos_classes(n):
        s_count, a_count = counting.count_nilpotent_partners_two_twos(ps)
        rows.append({"type": "+".join(map(str, (2, 2) + ps)), "count": s_count, "count_alternating": a_count, "even": True})
    if args.kind == "A":
        rows = [r for r in rows if r["even"]]
        for r in rows:
            r["count"] = r.pop("count_alternating", r["count"])
    if args.format == "json":
        _emit(args, json.dumps({"n": n, "kind": args.kind, "rows": rows}))
    else:
        lines = [f"nilpotent partners in {args.kind}{n}"]
        lines += [f"{r['type']:>24}  {r['count']}" for r in rows]
        _emit(args, "\n".join(lines))
    return OK


def cmd_embed(args) -> int:
    path = Path(_need(args, "input"))
    text = path.read_text()
    X = from_json(text) if text.lstrip().startswith("{") else parse_edge_list(text)
    tower, ws = embedder.embed_graph(X)
    budget = args.budget or EMBED_BUDGET
    if not args.verify:
        _emit(args, tower.to_json() if args.format == "json" else _tower_text(tower))
        return OK
    tr = embedder.verify_embedding(X, tower, ws)
    ok = tr.ok
    extra = {"order": str(tower.order), "primes": tower.primes}
    notes = []
    if tower.order <= budget:
        G = embedder.materialize(tower, budget)
        ids = embedder.witness_ids(G, tower, ws)
        Y = induced_subgraph(build_nilgraph(G), ids)
        same = Y.same_adjacency(X)
        ok = ok and same
        extra["materialized"] = same
        notes.append(f"materialized |G| = {G.order}: induced subgraph {'matches' if same else 'DIFFERS'}")
        emb = embedder.symmetric_embedding(G, ids, budget)
        if emb is not None:
            S, sids = emb
            full = build_nilgraph(S)
            inside = induced_subgraph(full, sids).same_adjacency(X) and all(full.rows[i] for i in sids)
            ok = ok and inside
            extra["symmetric"] = inside
            notes.append(f"inside {S.label}: witnesses {'are' if inside else 'are NOT'} non-isolated with the same pattern")
    else:
        notes.append(f"|G| = {tower.order} exceeds budget; verified by transcript only")
    if args.format == "json":
        data = json.loads(tr.to_json())
        data.update(extra, tower=json.loads(tower.to_json()))
        _emit(args, json.dumps(data))
    else:
        _emit(args, "\n".join([_tower_text(tower), tr.to_text()] + notes))
    return OK if ok else FAILED


def _tower_text(tower) -> str:
    lines = [f"tower of {tower.k} levels, |G| = {tower.order}"]
    for lv in tower.levels:
        lines.append(f"  level {lv.t}: p = {lv.p}, dimension {lv.dim}, acted on by levels {list(lv.neighbors)}")
    return "\n".join(lines)


def cmd_random(args) -> int:
    seed = _need(args, "seed")
    n = _need(args, "n")
    s = parse_cycles(args.perm, n) if args.perm else parse_cycles("(1 2)", n)
    est = randperm.nonadjacency_fraction(s, args.samples, seed, workers=args.workers or _default_workers())
    lo, hi = est.interval(3)
    below = hi < 0.5
    if args.format == "json":
        _emit(
            args,
            json.dumps(
                {
                    "n": n,
                    "perm": format_cycles(s),
                    "seed": seed,
                    "samples": est.samples,
                    "successes": est.successes,
                    "estimate": est.estimate,
                    "interval": [lo, hi],
                    "below_half": below,
                }
            ),
        )
    else:
        _emit(
            args,
            f"{format_cycles(s)} in S{n}: {est.successes}/{est.samples} nilpotent pairs, "
            f"estimate {est.estimate:.4f}, 3-sigma interval [{lo:.4f}, {hi:.4f}], below 1/2: {below}",
        )
    return OK


def cmd_ledger(args) -> int:
    led = counting.certify_trivial_hypercenter(_need(args, "n"), args.kind)
    _emit(args, led.to_json() if args.format == "json" else led.to_text())
    return OK if led.certified else FAILED


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--group", help="group spec, e.g. S4, D9, GD(C3xC3), C2xA4")
    common.add_argument("--n", type=int)
    common.add_argument("--p", type=int)
    common.add_argument("--kind", choices=["S", "A"], default="S")
    common.add_argument("--seed", type=int)
    common.add_argument("--samples", type=int, default=10_000)
    common.add_argument("--budget", type=int, help="element budget for explicit groups")
    common.add_argument("--format", choices=["text", "json", "dot"], default="text")
    common.add_argument("--out")
    common.add_argument("--workers", type=int)

    parser = argparse.ArgumentParser(prog="nilgraph", description="Non-nilpotent graphs of finite groups.")
    sub = parser.add_subparsers(dest="command", required=True)
    g = sub.add_parser("graph", parents=[common], help="export the non-nilpotent graph of a group")
    g.add_argument("--all-vertices", action="store_true", help="keep the isolated hypercenter vertices")
    sub.add_parser("degrees", parents=[common], help="degree table of a group, or prime-order degrees in S_n")
    v = sub.add_parser("verify", parents=[common], help="run a verification suite")
    v.add_argument("--suite", required=True, choices=list(checks.SUITES) + ["all"])
    sub.add_parser("count", parents=[common], help="nilpotent partner counts by cycle type")
    e = sub.add_parser("embed", parents=[common], help="realize a graph as an induced subgraph")
    e.add_argument("--input", help="edge list ('k' then 'i j' lines) or graph JSON")
    e.add_argument("--verify", action="store_true")
    r = sub.add_parser("random", parents=[common], help="Monte Carlo nilpotent fraction for a prime-order permutation")
    r.add_argument("--perm", help="cycle notation, default (1 2)")
    sub.add_parser("ledger", parents=[common], help="divisibility ledger for the hypercenter of a graph twin")
    return parser


COMMANDS = {
    "graph": cmd_graph,
    "degrees": cmd_degrees,
    "verify": cmd_verify,
    "count": cmd_count,
    "embed": cmd_embed,
    "random": cmd_random,
    "ledger": cmd_ledger,
}


def run(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return USAGE if e.code else OK
    if args.format == "dot" and args.command != "graph":
        print("error: --format dot is only available for 'graph'", file=sys.stderr)
        return USAGE
    try:
        return COMMANDS[args.command](args)
    except (UsageError, GroupSpecError, BudgetError, ValueError, OSError) as e:
        print(f"error: {e}", file=sys.stderr)
        return USAGE


def main():
    sys.exit(run())


if __name__ == "__main__":
    main()
