"""regmatch command line interface.

Subcommands: generate | sample | match | decompose | verify-witness |
experiment {survival|lowerbound|cuts|bench}.  Exit codes: 0 success,
1 domain error, 2 usage error.
"""

from __future__ import annotations

import argparse
import sys

from . import experiments
from .decomposition import decompose, verify_decomposition
from .generators import (ParameterError, disjoint_union, gen_h_block,
                         gen_lower_bound_family, gen_random_regular,
                         write_lower_bound_meta)
from .graph import GraphError, read_graph, write_graph
from .matching import (brute_force_max_matching, euler_split_matching,
                       find_perfect_matching, hopcroft_karp, MatchResult)
from .sampling import SamplingConfig, sample_edges
from .witness import verify_witness_cut_injection


def _parse_float_list(text):
    return tuple(float(x) for x in text.split(",") if x)


def _parse_int_list(text):
    return tuple(int(x) for x in text.split(",") if x)


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="regmatch")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("generate", help="write a graph from a named family")
    p.add_argument("--family", required=True,
                   choices=["regular", "lowerbound", "h-block", "two-components"])
    p.add_argument("--n", type=int, default=0)
    p.add_argument("--d", type=int, required=True)
    p.add_argument("--k", type=int, default=0, help="deficiency count (h-block)")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--out", required=True)

    p = sub.add_parser("sample", help="Bernoulli edge sampling")
    p.add_argument("--input", required=True)
    p.add_argument("--p", type=float, required=True)
    p.add_argument("--seed", type=int, required=True)
    p.add_argument("--out", required=True)

    p = sub.add_parser("match", help="find a matching")
    p.add_argument("--input", required=True)
    p.add_argument("--algo", required=True, choices=["hk", "euler", "sampled", "brute"])
    p.add_argument("--c", type=float, default=48.0)
    p.add_argument("--seed", type=int, default=0)

    p = sub.add_parser("decompose", help="low-cut decomposition")
    p.add_argument("--input", required=True)
    p.add_argument("--verify", action="store_true")

    p = sub.add_parser("verify-witness", help="witness-to-cut injection check")
    p.add_argument("--input", required=True)

    p = sub.add_parser("experiment", help="Monte Carlo experiments")
    esub = p.add_subparsers(dest="experiment", required=True)

    def common(ep):
        ep.add_argument("--n", type=_parse_int_list, default=())
        ep.add_argument("--d", type=_parse_int_list, default=())
        ep.add_argument("--trials", type=int, default=100)
        ep.add_argument("--seed", type=int, required=True)
        ep.add_argument("--out", default=None)
        ep.add_argument("--input", default=None)

    ep = esub.add_parser("survival")
    common(ep)
    ep.add_argument("--p", type=_parse_float_list, required=True)
    grp = ep.add_mutually_exclusive_group()
    grp.add_argument("--fixed-graph", action="store_true", default=True,
                     help="pin one generated graph across all p (default)")
    grp.add_argument("--fresh-graph", action="store_true",
                     help="regenerate the graph for every trial")

    ep = esub.add_parser("lowerbound")
    common(ep)
    ep.add_argument("--p", type=_parse_float_list, required=True)

    ep = esub.add_parser("cuts")
    common(ep)
    ep.add_argument("--epsilon", type=float, default=0.5)
    ep.add_argument("--c", type=float, default=3.0)

    ep = esub.add_parser("bench")
    common(ep)
    ep.add_argument("--c", type=float, default=48.0)
    ep.add_argument("--repeats", type=int, default=5)

    return parser


def _cmd_generate(args) -> int:
    if args.family == "regular":
        g = gen_random_regular(args.n, args.d, args.seed)
    elif args.family == "lowerbound":
        g, meta = gen_lower_bound_family(args.n, args.d)
        write_lower_bound_meta(meta, args.out + ".meta")
    elif args.family == "h-block":
        g, _, _ = gen_h_block(args.d, args.k, args.seed)
    else:  # two-components
        g = disjoint_union(gen_random_regular(args.n, args.d, args.seed),
                           gen_random_regular(args.n, args.d, args.seed + 1))
    write_graph(g, args.out)
    return 0


def _cmd_sample(args) -> int:
    g = read_graph(args.input)
    sampled = sample_edges(g, SamplingConfig(p=args.p, seed=args.seed))
    write_graph(sampled, args.out)
    return 0


def _cmd_match(args) -> int:
    g = read_graph(args.input)
    if args.algo == "hk":
        matching, phases = hopcroft_karp(g, with_phases=True)
        res = MatchResult(matching, g.n_left == g.n_right == matching.size,
                          phases=phases)
    elif args.algo == "euler":
        matching = euler_split_matching(g)
        res = MatchResult(matching, True)
    elif args.algo == "brute":
        matching = brute_force_max_matching(g)
        res = MatchResult(matching, g.n_left == g.n_right == matching.size)
    else:
        res = find_perfect_matching(g, c=args.c, seed=args.seed)
    for u, v in res.matching.pairs():
        print(f"{u} {v}")
    print(f"perfect={str(res.is_perfect).lower()} size={res.matching.size} "
          f"attempts={res.attempts}")
    return 0 if res.is_perfect else 1


def _cmd_decompose(args) -> int:
    g = read_graph(args.input)
    result = decompose(g)
    print(f"alpha={result.alpha}")
    for idx, piece in enumerate(result.pieces):
        left = ",".join(str(i) for i in sorted(piece.vertex_set.left))
        right = ",".join(str(j) for j in sorted(piece.vertex_set.right))
        mi = result.boundary_counts[idx] if idx < len(result.boundary_counts) else ""
        print(f"piece {idx}: U=[{left}] V=[{right}] M={mi}")
    if args.verify:
        report = verify_decomposition(g, result)
        if report.ok:
            print("verify=ok")
        else:
            for v in report.violations:
                print(f"violation: {v}")
            return 1
    return 0


def _cmd_verify_witness(args) -> int:
    g = read_graph(args.input)
    report = verify_witness_cut_injection(g)
    if report.ok:
        print("injection=ok")
        return 0
    p1, p2, boundary = report.counterexample
    print("injection=collision")
    print(f"pair1 side={p1.side} A={sorted(p1.a)} B={sorted(p1.b)}")
    print(f"pair2 side={p2.side} A={sorted(p2.a)} B={sorted(p2.b)}")
    print(f"shared_boundary={sorted(boundary)}")
    return 1


def _cmd_experiment(args) -> int:
    cfg = experiments.ExperimentConfig(
        family="regular",
        n_values=args.n,
        d_values=args.d,
        p_values=getattr(args, "p", ()),
        trials=args.trials,
        seed=args.seed,
        out=args.out,
        input_path=args.input,
        fixed_graph=not getattr(args, "fresh_graph", False),
        epsilon=getattr(args, "epsilon", 0.5),
        c=getattr(args, "c", 3.0),
        repeats=getattr(args, "repeats", 5),
    )
    if args.experiment == "survival":
        records = experiments.run_survival_curve(cfg)
    elif args.experiment == "lowerbound":
        records = experiments.run_lower_bound_check(cfg)
    elif args.experiment == "cuts":
        report = experiments.run_cut_preservation(cfg)
        print(f"p={report.p:.12g} kappa={report.kappa} trials={report.trials}")
        print(f"cuts_preserved_fraction={report.cuts_ok_fraction:.12g}")
        print(f"witness_preserved_fraction={report.witness_ok_fraction:.12g} "
              f"witness_sets={report.n_witness_sets}")
        if cfg.out:
            rows = [
                experiments.ExperimentRecord("cuts", 0, 0, report.p,
                                             report.trials, report.cuts_ok),
                experiments.ExperimentRecord("cuts-witness", 0, 0, report.p,
                                             report.trials, report.witness_ok),
            ]
            experiments.write_records(rows, cfg.out)
        return 0
    else:
        records = experiments.run_runtime_bench(cfg)
    for rec in records:
        print(rec.to_row())
    return 0


def main(argv=None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    handlers = {
        "generate": _cmd_generate,
        "sample": _cmd_sample,
        "match": _cmd_match,
        "decompose": _cmd_decompose,
        "verify-witness": _cmd_verify_witness,
        "experiment": _cmd_experiment,
    }
    try:
        return handlers[args.command](args)
    except (GraphError, ParameterError, ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
