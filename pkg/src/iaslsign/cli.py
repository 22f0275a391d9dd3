"""Command-line front end.

Exit codes: 0 success, 1 a computed negative answer (not balanced, not
clusterable, nothing found, claim refuted), 2 bad input, 3 cycle budget
exceeded. Results go to stdout as JSON unless ``--human`` is given.
"""

from __future__ import annotations

import argparse
import json
import sys

from .errors import CycleBudgetExceeded, IaslError
from .formats import read_graph, read_labeling, read_signed_graph
from .graphs import DEFAULT_CYCLE_BUDGET
from .harness import THEOREM_IDS, CorpusParams, verify_theorems
from .intsets import MAX_ELEM, LabelSet, ground_range
from .labeling import classify, edge_labels, mono_indexed_vertices, validate_iasl
from .search import ClassFilter, SearchSpec, enumerate_labelings
from .signing import induce_signature, is_balanced, sign_symbol, two_clustering

EXIT_OK, EXIT_NEGATIVE, EXIT_INPUT, EXIT_BUDGET = 0, 1, 2, 3


class InputError(Exception):
    pass


def _fmt_set(vs) -> str:
    return "{" + ",".join(map(str, sorted(vs))) + "}"


def _emit(args, payload: dict, human: str) -> None:
    if args.human:
        print(human)
    else:
        print(json.dumps(payload))


def parse_ground_set(rng: str | None, elements: str | None, default: LabelSet) -> LabelSet:
    if rng and elements:
        raise InputError("give either --ground-set or --ground-elements, not both")
    try:
        if rng:
            lo, sep, hi = rng.partition("..")
            if not sep:
                raise ValueError
            return ground_range(int(lo), int(hi))
        if elements:
            xs = [int(x) for x in elements.split(",")]
            if any(x > MAX_ELEM for x in xs):
                raise ValueError
            return LabelSet(xs)
    except ValueError:
        raise InputError(f"bad ground set {rng or elements!r}; use a..b or a comma list within 0..{MAX_ELEM}") from None
    return default


def _load_labeled(args):
    g = read_graph(args.graph)
    f = read_labeling(args.labeling, g.n)
    x = parse_ground_set(args.ground_set, args.ground_elements, ground_range(0, MAX_ELEM))
    validate_iasl(g, f, x)
    return g, f


def _load_signed(args):
    if len(args.inputs) == 1:
        return read_signed_graph(args.inputs[0])
    if len(args.inputs) == 2:
        g = read_graph(args.inputs[0])
        f = read_labeling(args.inputs[1], g.n)
        validate_iasl(g, f)
        return induce_signature(g, f)
    raise InputError("expected SIGNED_GRAPH or GRAPH LABELING")


def cmd_classify(args) -> int:
    g, f = _load_labeled(args)
    cls = classify(g, f)
    edges = [{"u": u, "v": v, "label": str(lab), "size": len(lab)}
             for (u, v), lab in zip(g.edges, edge_labels(g, f))]
    mono = sorted(mono_indexed_vertices(f))
    payload = {"class": cls.to_dict(), "mono_indexed": mono, "edges": edges}
    human = [" ".join(f"{k}={json.dumps(v)}" for k, v in cls.to_dict().items())]
    human += [f"{e['u']} {e['v']} {e['label']} {e['size']}" for e in edges]
    _emit(args, payload, "\n".join(human))
    return EXIT_OK


def cmd_sign(args) -> int:
    g, f = _load_labeled(args)
    s = induce_signature(g, f)
    edges = [{"u": u, "v": v, "sign": sign_symbol(sg), "size": len(lab)}
             for (u, v), sg, lab in zip(g.edges, s.signs, edge_labels(g, f))]
    _emit(args, {"edges": edges}, "\n".join(f"{e['u']} {e['v']} {e['sign']} {e['size']}" for e in edges))
    return EXIT_OK


def cmd_balance(args) -> int:
    s = _load_signed(args)
    res = is_balanced(s, oracle=args.oracle, max_cycles=args.cycle_budget)
    if res.balanced:
        v1, v2 = res.partition
        payload = {"balanced": True, "partition": [sorted(v1), sorted(v2)]}
        human = f"balanced V1={_fmt_set(v1)} V2={_fmt_set(v2)}"
    else:
        payload = {"balanced": False, "cycle": list(res.cycle.vertices)}
        human = f"not balanced: negative cycle {res.cycle}"
    _emit(args, payload, human)
    return EXIT_OK if res.balanced else EXIT_NEGATIVE


def cmd_cluster(args) -> int:
    s = _load_signed(args)
    res = two_clustering(s, oracle=args.oracle)
    if res is None:
        _emit(args, {"clusterable": False}, "not 2-clusterable")
        return EXIT_NEGATIVE
    payload = {"clusterable": True, "clusters": [sorted(res.u1), sorted(res.u2)]}
    _emit(args, payload, f"clusters U1={_fmt_set(res.u1)} U2={_fmt_set(res.u2)}")
    return EXIT_OK


def cmd_search(args) -> int:
    g = read_graph(args.graph)
    x = parse_ground_set(args.ground_set, args.ground_elements, ground_range(0, 4))
    try:
        flt = ClassFilter.parse(args.filter)
    except ValueError as exc:
        raise InputError(str(exc)) from None
    if args.max_label_size < 1 or (args.limit is not None and args.limit < 0):
        raise InputError("--max-label-size must be positive and --limit non-negative")
    found = 0
    for f in enumerate_labelings(SearchSpec(g, x, flt, args.max_label_size, args.limit)):
        found += 1
        print(str(f) if args.human else f.to_json())
    if not found:
        print("no labeling found" if args.human else json.dumps({"found": 0}))
        return EXIT_NEGATIVE
    return EXIT_OK


def cmd_verify(args) -> int:
    ids = list(THEOREM_IDS) if args.theorem == "all" else [args.theorem]
    if any(t not in THEOREM_IDS for t in ids):
        raise InputError(f"unknown theorem id {args.theorem!r}; known: all, {', '.join(THEOREM_IDS)}")
    if not 2 <= args.max_n <= 7:
        raise InputError("--max-n must be between 2 and 7")
    if args.max_label_size < 1:
        raise InputError("--max-label-size must be positive")
    x = parse_ground_set(args.ground_set, args.ground_elements, ground_range(0, 4))
    params = CorpusParams(args.max_n, x, min(args.max_label_size, len(x)), args.cycle_budget,
                          args.max_counterexamples)
    reports = verify_theorems(ids, params, workers=args.workers)
    if args.human:
        text = "\n".join(f"{r.theorem_id}: {r.status} (checked {r.checked_count}, "
                         f"violations {r.violation_count})" for r in reports)
    else:
        docs = [r.to_dict() for r in reports]
        text = json.dumps(docs[0] if args.theorem != "all" else docs, indent=2)
    if args.output:
        with open(args.output, "w") as fh:
            fh.write(text + "\n")
    else:
        print(text)
    return EXIT_OK if all(r.status == "confirmed" for r in reports) else EXIT_NEGATIVE


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="iaslsign", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="command", required=True)

    def common(sp):
        sp.add_argument("--human", action="store_true", help="plain-text summary instead of JSON")

    def ground(sp):
        sp.add_argument("--ground-set", metavar="A..B", help="inclusive integer range")
        sp.add_argument("--ground-elements", metavar="X,Y,...", help="explicit comma list")

    for name, fn, help_ in [("classify", cmd_classify, "classify a labeling"),
                            ("sign", cmd_sign, "print induced edge signs")]:
        sp = sub.add_parser(name, help=help_)
        sp.add_argument("graph")
        sp.add_argument("labeling")
        ground(sp)
        common(sp)
        sp.set_defaults(func=fn)

    for name, fn, help_ in [("balance", cmd_balance, "decide balance"),
                            ("cluster", cmd_cluster, "find a 2-clustering")]:
        sp = sub.add_parser(name, help=help_)
        sp.add_argument("inputs", nargs="+", metavar="FILE", help="SIGNED_GRAPH, or GRAPH LABELING")
        sp.add_argument("--oracle", action="store_true", help="cross-check against brute force")
        sp.add_argument("--cycle-budget", type=int, default=DEFAULT_CYCLE_BUDGET)
        common(sp)
        sp.set_defaults(func=fn)

    sp = sub.add_parser("search", help="enumerate labelings of a graph")
    sp.add_argument("graph")
    ground(sp)
    sp.add_argument("--filter", default="any", help="NAME[,k=K|,d=D]")
    sp.add_argument("--max-label-size", type=int, default=3)
    sp.add_argument("--limit", type=int)
    common(sp)
    sp.set_defaults(func=cmd_search)

    sp = sub.add_parser("verify", help="check catalog claims over the graph corpus")
    sp.add_argument("--theorem", default="all", help=f"one of: all, {', '.join(THEOREM_IDS)}")
    ground(sp)
    sp.add_argument("--max-n", type=int, default=5)
    sp.add_argument("--max-label-size", type=int, default=3)
    sp.add_argument("--cycle-budget", type=int, default=DEFAULT_CYCLE_BUDGET)
    sp.add_argument("--max-counterexamples", type=int, default=10)
    sp.add_argument("--workers", type=int, default=1)
    sp.add_argument("--output", help="write the report here instead of stdout")
    common(sp)
    sp.set_defaults(func=cmd_verify)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except CycleBudgetExceeded as exc:
        print(json.dumps({"error": "CycleBudgetExceeded", "message": str(exc)}))
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_BUDGET
    except (IaslError, InputError, OSError) as exc:
        kind = type(exc).__name__
        print(json.dumps({"error": kind, "message": str(exc)}))
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
