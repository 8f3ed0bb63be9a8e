"""Command line entry point: ``tjoin bounds|mu2k|ear|tsp|exact12|oracle|gen``."""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

import numpy as np

from . import generators
from .ears import EXACT_EAR_LIMIT, best_ear_upper_bound, ear_upper_bound
from .errors import InfeasibleError, InputError
from .graph import WeightedGraph, dump_edge_list, load_edge_list, load_similarity_list, metric_closure
from .onetwo import mu_12, validate_one_two
from .oracle import brute_force_max_valid_set, brute_force_mu, brute_force_mu_2k, check_formulation_equivalence
from .pipeline import DEFAULT_LONG_EAR_EPSILON, bounds_row, mu2k_rows
from .report import bounds_table, fmt, mu2k_table, render
from .tsp import christofides

EXIT_INPUT = 2
EXIT_INFEASIBLE = 3


def _read_graph(path: str, similarity: bool = False) -> WeightedGraph:
    try:
        text = sys.stdin.read() if path == "-" else Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc.strerror}") from None
    return load_similarity_list(text) if similarity else load_edge_list(text)


def _labels(g, vertices) -> str:
    return " ".join(g.labels[v] for v in vertices)


def _k_range(text: str | None) -> tuple[int, int | None]:
    if text is None:
        return 1, None
    lo, sep, hi = text.partition(":")
    try:
        return (int(lo), int(hi)) if sep else (int(lo), int(lo))
    except ValueError:
        raise InputError(f"--k-range expects LO:HI, got {text!r}") from None


def cmd_bounds(args) -> str:
    d = metric_closure(_read_graph(args.file, args.similarity))
    row = bounds_row(d, args.start, args.epsilon, args.jobs)
    return bounds_table([row], args.format, full=args.all_columns, precision=args.precision)


def cmd_mu2k(args) -> str:
    d = metric_closure(_read_graph(args.file, args.similarity))
    lo, hi = _k_range(args.k_range)
    rows = mu2k_rows(d, lo, hi, args.start, args.jobs)
    return mu2k_table(rows, args.format, precision=args.precision)


def cmd_ear(args) -> str:
    g = _read_graph(args.file, args.similarity)
    if args.closure:
        g = metric_closure(g).as_graph()
    eps = args.epsilon
    if eps is None and g.n > EXACT_EAR_LIMIT:
        eps = DEFAULT_LONG_EAR_EPSILON
    if args.strategy == "best":
        eb = best_ear_upper_bound(g, eps)
    else:
        eb = ear_upper_bound(g, args.strategy, eps, args.root)
    out = render(
        ("bound", "bridge_weight", "ears"),
        [[fmt(eb.bound, args.precision), fmt(eb.bridge_weight, args.precision), str(len(eb.decomposition.ears))]],
        args.format,
    )
    if args.show_ears:
        out += eb.decomposition.to_text()
    return out


def cmd_tsp(args) -> str:
    g = _read_graph(args.file, args.similarity)
    d = metric_closure(g)
    tour = christofides(d)
    return render(
        ("cost", "half", "tour"),
        [[fmt(tour.cost, args.precision), fmt(tour.cost / 2, args.precision), _labels(g, tour.order)]],
        args.format,
    )


def cmd_exact12(args) -> str:
    g = _read_graph(args.file)
    res = mu_12(validate_one_two(g))
    removed = "" if res.removed is None else g.labels[res.removed]
    return render(
        ("value", "removed", "witness"),
        [[fmt(res.value, args.precision), removed, _labels(g, res.witness)]],
        args.format,
    )


def cmd_oracle(args) -> str:
    g = _read_graph(args.file, args.similarity)
    p = args.precision
    if args.what == "mu":
        r = brute_force_mu(metric_closure(g))
        return render(("value", "subset"), [[fmt(r.value, p), _labels(g, r.subset)]], args.format)
    if args.what == "mu2k":
        if args.k is None:
            raise InputError("oracle mu2k needs --k")
        r = brute_force_mu_2k(metric_closure(g), args.k)
        return render(("k", "value", "subset"), [[str(args.k), fmt(r.value, p), _labels(g, r.subset)]], args.format)
    if args.what == "valid-set":
        vs = brute_force_max_valid_set(g)
        edges = " ".join(f"{g.labels[g.edges[k][0]]}-{g.labels[g.edges[k][1]]}" for k in vs.edges)
        return render(("weight", "edges", "odd"), [[fmt(vs.weight, p), edges, _labels(g, vs.odd_vertices)]], args.format)
    rep = check_formulation_equivalence(g)
    status = "PASS" if rep.passed else "FAIL"
    return render(
        ("valid_set_weight", "mu", "odd_matching", "status"),
        [[fmt(rep.valid_set_weight, p), fmt(rep.mu_value, p), fmt(rep.odd_matching_cost, p), status]],
        args.format,
    )


def cmd_gen(args) -> str:
    kind = args.kind
    if kind == "figure1":
        g = generators.ear_gap_graph(args.epsilon)
    elif kind == "line":
        g = generators.line_pairs(args.pairs, args.epsilon)
    elif kind == "unit-complete":
        g = generators.unit_complete(args.n)
    else:
        if args.seed is None:
            raise InputError(f"gen {kind} needs --seed")
        rng = np.random.default_rng(args.seed)
        if kind == "one-two":
            g = generators.random_one_two(args.n, args.p1, rng)
        elif kind == "points":
            g = generators.random_points(args.n, rng)
        else:
            g = generators.random_connected(args.n, args.extra, rng)
    return dump_edge_list(g)


def _required(args, *names) -> None:
    missing = [f"--{n.replace('_', '-')}" for n in names if getattr(args, n) is None]
    if missing:
        raise InputError(f"gen {args.kind} needs {', '.join(missing)}")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="tjoin", description="Bounds and exact values for the max-min T-join problem.")
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, similarity=True):
        p.add_argument("file", help="edge-list file, or - for stdin")
        if similarity:
            p.add_argument("--similarity", action="store_true", help="third column is a co-occurrence count")
        p.add_argument("--format", choices=("csv", "md"), default="csv")
        p.add_argument("--precision", type=int, default=6)

    p = sub.add_parser("bounds", help="greedy lower bound with harmonic, half-tour and ear upper bounds")
    common(p)
    p.add_argument("--start", type=int, default=0)
    p.add_argument("--epsilon", type=float, default=None, help="approximate ear knapsack parameter")
    p.add_argument("--jobs", type=int, default=1)
    p.add_argument("--all-columns", action="store_true")
    p.set_defaults(func=cmd_bounds)

    p = sub.add_parser("mu2k", help="per-k lower and upper bounds for fixed-size subsets")
    common(p)
    p.add_argument("--start", type=int, default=0)
    p.add_argument("--k-range", default=None, help="LO:HI (inclusive)")
    p.add_argument("--jobs", type=int, default=1)
    p.set_defaults(func=cmd_mu2k)

    p = sub.add_parser("ear", help="ear-decomposition upper bound")
    common(p)
    p.add_argument("--strategy", choices=("dfs", "hamiltonian-first", "best"), default="dfs")
    p.add_argument("--root", type=int, default=0)
    p.add_argument("--epsilon", type=float, default=None)
    p.add_argument("--closure", action="store_true", help="replace the graph by its metric closure first")
    p.add_argument("--show-ears", action="store_true")
    p.set_defaults(func=cmd_ear)

    p = sub.add_parser("tsp", help="Christofides tour on the metric closure")
    common(p)
    p.set_defaults(func=cmd_tsp)

    p = sub.add_parser("exact12", help="exact value on a complete graph with weights 1 and 2")
    common(p, similarity=False)
    p.set_defaults(func=cmd_exact12)

    p = sub.add_parser("oracle", help="brute-force ground truth for small graphs")
    p.add_argument("what", choices=("mu", "mu2k", "valid-set", "equivalence"))
    common(p)
    p.add_argument("--k", type=int, default=None)
    p.set_defaults(func=cmd_oracle)

    p = sub.add_parser("gen", help="write an instance as an edge list")
    p.add_argument("kind", choices=("figure1", "line", "unit-complete", "one-two", "points", "random-graph"))
    p.add_argument("--epsilon", type=float, default=None)
    p.add_argument("--pairs", type=int, default=None)
    p.add_argument("--n", type=int, default=None)
    p.add_argument("--p1", type=float, default=None)
    p.add_argument("--extra", type=int, default=None)
    p.add_argument("--seed", type=int, default=None)
    p.add_argument("-o", "--output", default=None)
    p.set_defaults(func=cmd_gen)
    return parser


_GEN_REQUIRES = {
    "figure1": ("epsilon",),
    "line": ("pairs", "epsilon"),
    "unit-complete": ("n",),
    "one-two": ("n", "p1", "seed"),
    "points": ("n", "seed"),
    "random-graph": ("n", "extra", "seed"),
}


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        if args.command == "gen":
            _required(args, *_GEN_REQUIRES[args.kind])
        out = args.func(args)
    except InfeasibleError as exc:
        print(f"tjoin: {exc}", file=sys.stderr)
        return EXIT_INFEASIBLE
    except InputError as exc:
        print(f"tjoin: {exc}", file=sys.stderr)
        return EXIT_INPUT
    if getattr(args, "output", None):
        Path(args.output).write_text(out, encoding="utf-8")
    else:
        sys.stdout.write(out)
    return 0


if __name__ == "__main__":
    sys.exit(main())
