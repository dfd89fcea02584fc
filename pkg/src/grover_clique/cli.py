"""Command-line interface.

Exit codes: 0 success, 1 verify mismatch, 2 parse/usage error, 3 resource guard.
"""
from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from . import circuit as qc
from .driver import DEFAULT_SEED, SolveConfig, solve
from .errors import DomainError, ParseError, ResourceLimitError
from .graph import EXAMPLES, Graph, example_graph, max_cliques_bruteforce, parse_dimacs, random_graph
from .resources import CASES, appendix_a_estimate, grover_report
from .simulator import compiled_oracle_run, dense_grover_run, marginal, simulate

EXIT_OK, EXIT_MISMATCH, EXIT_PARSE, EXIT_RESOURCE = 0, 1, 2, 3

TABLE1_COLUMNS = ["x1", "x2", "x3", "e1", "z1_1", "z1_0", "z2_2", "z2_1", "z2_0", "z3_3", "z3_2", "z3_1", "z3_0"]


def _read_graph(args) -> Graph:
    if getattr(args, "example", None):
        return example_graph(args.example)
    if getattr(args, "inline", None):
        return parse_dimacs(args.inline.replace(";", "\n"))
    if not getattr(args, "graph", None):
        raise ParseError("no graph given (path, '-', --inline or --example)")
    text = sys.stdin.read() if args.graph == "-" else Path(args.graph).read_text()
    return parse_dimacs(text)


def _emit(args, text: str):
    if getattr(args, "out", None):
        Path(args.out).write_text(text)
    else:
        sys.stdout.write(text)


def _config(args) -> SolveConfig:
    return SolveConfig(backend=args.backend, m_mode=args.m_mode, attempts_per_level=args.attempts, seed=args.seed)


def cmd_solve(args) -> int:
    result = solve(_read_graph(args), _config(args))
    _emit(args, result.to_json() + "\n" if args.machine else result.to_text())
    return EXIT_OK


def cmd_synth(args) -> int:
    if args.reduced_g21:
        c = qc.build_g21_reduced()
    else:
        g = _read_graph(args)
        level = g.n if args.level is None else args.level
        c = qc.build_grover_circuit(g, level, args.iterations)
    _emit(args, qc.to_text(c))
    return EXIT_OK


def cmd_simulate(args) -> int:
    if args.circuit or args.reduced_g21:
        c = qc.build_g21_reduced() if args.reduced_g21 else qc.parse_text(Path(args.circuit).read_text())
        qubits = [int(q) for q in args.qubits.split(",")] if args.qubits else range(c.qubit_count)
        dist = marginal(simulate(c), qubits)
    else:
        g = _read_graph(args)
        level = g.n if args.level is None else args.level
        run = dense_grover_run if args.backend == "dense" else compiled_oracle_run
        dist = run(g, level, args.iterations)
    _emit(args, dist.to_json() + "\n" if args.machine else dist.to_text())
    return EXIT_OK


def cmd_resources(args) -> int:
    g = _read_graph(args)
    level = g.n if args.level is None else args.level
    report = grover_report(g, level, args.iterations)
    m = g.n * (g.n - 1) // 2 - g.num_edges
    estimates = {case: appendix_a_estimate(g.n, m, case) for case in CASES}
    if args.machine:
        doc = {"exact": report.to_dict(), "asymptotic": {c: e.to_dict()["terms"] for c, e in estimates.items()}}
        _emit(args, json.dumps(doc, indent=2, sort_keys=True) + "\n")
        return EXIT_OK
    lines = [f"graph n={g.n} edges={g.num_edges} complement_edges={m} level={level} iterations={args.iterations}",
             report.to_table().rstrip("\n"), "", "leading terms (coefficient * 2^(n/2) + constant)"]
    for case, est in estimates.items():
        terms = ", ".join(f"{k}={t.coefficient}*2^(n/2)+{t.constant}" for k, t in est.terms.items())
        lines.append(f"{case}: {terms}")
    _emit(args, "\n".join(lines) + "\n")
    return EXIT_OK


def cmd_verify(args) -> int:
    if args.random:
        graphs = [random_graph(args.n, args.p, seed=args.seed + k) for k in range(args.random)]
    else:
        graphs = [_read_graph(args)]
    rows, status = [], EXIT_OK
    for k, g in enumerate(graphs):
        result = solve(g, _config(args))
        size, witnesses = max_cliques_bruteforce(g)
        ok = result.clique_size == size and set(result.witnesses) <= witnesses
        if not ok:
            status = EXIT_MISMATCH
        rows.append({"graph": k, "n": g.n, "edges": g.num_edges, "quantum": result.clique_size,
                     "bruteforce": size, "witnesses": result.witnesses, "ok": ok})
    if args.machine:
        _emit(args, json.dumps(rows, indent=2) + "\n")
    else:
        lines = [f"graph={r['graph']} n={r['n']} edges={r['edges']} quantum={r['quantum']} "
                 f"bruteforce={r['bruteforce']} {'ok' if r['ok'] else 'MISMATCH'}" for r in rows]
        _emit(args, "\n".join(lines) + "\n")
    return status


def cmd_table1(args) -> int:
    g = _read_graph(args) if (args.graph or args.inline or args.example) else example_graph("g32")
    rows = qc.classification_table(g)
    if args.machine:
        _emit(args, json.dumps(rows, indent=2) + "\n")
        return EXIT_OK
    cols = TABLE1_COLUMNS if g == example_graph("g32") else list(rows[0])
    out = [" ".join(f"{c:>4}" for c in cols)]
    out.extend(" ".join(f"{r[c]:>4}" for c in cols) for r in rows)
    _emit(args, "\n".join(out) + "\n")
    return EXIT_OK


def _graph_args(p):
    p.add_argument("graph", nargs="?", help="DIMACS file, or '-' for stdin")
    p.add_argument("--inline", help="DIMACS text with ';' as line separator")
    p.add_argument("--example", choices=sorted(EXAMPLES), help="built-in instance")


def _common(p):
    p.add_argument("--machine", action="store_true", help="structured JSON output")
    p.add_argument("--out", help="write output to this path")


def _solver_args(p):
    p.add_argument("--backend", choices=("compiled", "dense"), default="compiled")
    p.add_argument("--m-mode", choices=("known", "unknown"), default="known")
    p.add_argument("--attempts", type=int, default=3)
    p.add_argument("--seed", type=int, default=DEFAULT_SEED)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="grover-clique", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("solve", help="find a maximum clique by Grover search")
    _graph_args(p)
    _solver_args(p)
    _common(p)
    p.set_defaults(func=cmd_solve)

    p = sub.add_parser("synth", help="emit the search circuit in text form")
    _graph_args(p)
    _common(p)
    p.add_argument("--level", type=int)
    p.add_argument("--iterations", type=int, default=1)
    p.add_argument("--reduced-g21", action="store_true", help="four-qubit circuit for the one-edge graph")
    p.set_defaults(func=cmd_synth)

    p = sub.add_parser("simulate", help="print an output distribution")
    _graph_args(p)
    _common(p)
    p.add_argument("--circuit", help="circuit file in text form")
    p.add_argument("--qubits", help="comma-separated qubits to report (circuit mode)")
    p.add_argument("--reduced-g21", action="store_true")
    p.add_argument("--level", type=int)
    p.add_argument("--iterations", type=int, default=1)
    p.add_argument("--backend", choices=("compiled", "dense"), default="compiled")
    p.set_defaults(func=cmd_simulate)

    p = sub.add_parser("resources", help="exact gate counts and leading-order estimates")
    _graph_args(p)
    _common(p)
    p.add_argument("--level", type=int)
    p.add_argument("--iterations", type=int, default=1)
    p.set_defaults(func=cmd_resources)

    p = sub.add_parser("verify", help="compare the search against brute force")
    _graph_args(p)
    _solver_args(p)
    _common(p)
    p.add_argument("--random", type=int, default=0, help="number of random graphs instead of a file")
    p.add_argument("--n", type=int, default=8)
    p.add_argument("--p", type=float, default=0.5)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("table1", help="ancilla truth table after classification")
    _graph_args(p)
    _common(p)
    p.set_defaults(func=cmd_table1)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except ParseError as exc:
        print(f"parse error: {exc}", file=sys.stderr)
        return EXIT_PARSE
    except ResourceLimitError as exc:
        print(f"resource limit: {exc}", file=sys.stderr)
        return EXIT_RESOURCE
    except (DomainError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_PARSE


if __name__ == "__main__":
    sys.exit(main())
