"""zfnets command line: construct networks, verify controllability, measure
robustness, run family sweeps, and simulate the distributed grammars.

Exit codes: 0 success, 2 infeasible/bad input, 3 verification failed,
4 numerical or fixpoint non-convergence.  ZFNETS_OUT_DIR sets the default
output directory for generated files.
"""
from __future__ import annotations

import argparse
import os
import sys
from pathlib import Path

from . import constructions as cons
from . import grammar as gram
from . import robustness as rob
from . import ssc
from .graph import (
    Graph,
    GraphDisconnectedError,
    LeaderSet,
    export_dot,
    from_edge_list_text,
    to_edge_list_text,
)
from .zero_forcing import is_maximal_for_zfs, is_unique_process, is_zfs

EXIT_OK = 0
EXIT_INFEASIBLE = 2
EXIT_VERIFICATION_FAILED = 3
EXIT_NONCONVERGENCE = 4

OUT_DIR_ENV = "ZFNETS_OUT_DIR"


def _out_dir() -> Path:
    d = Path(os.environ.get(OUT_DIR_ENV, "."))
    d.mkdir(parents=True, exist_ok=True)
    return d


def _resolve_out(arg: str | None, default_name: str) -> Path:
    if arg:
        path = Path(arg)
        if path.parent != Path("."):
            path.parent.mkdir(parents=True, exist_ok=True)
        return path
    return _out_dir() / default_name


def _read_graph(path: str, n: int | None = None) -> Graph:
    return from_edge_list_text(Path(path).read_text(), n=n)


def _parse_id_list(text: str) -> tuple[int, ...]:
    try:
        return tuple(int(part) for part in text.split(",") if part.strip() != "")
    except ValueError as exc:
        raise ValueError(f"expected comma-separated node ids, got {text!r}") from exc


def _parse_int_values(text: str) -> list[int]:
    """Parse '2-10' / '2,3,7' / '1,4-6' into a sorted list of ints."""
    values: set[int] = set()
    for part in text.split(","):
        part = part.strip()
        if not part:
            continue
        if "-" in part[1:]:
            lo_text, hi_text = part.split("-", 1)
            lo, hi = int(lo_text), int(hi_text)
            if hi < lo:
                raise ValueError(f"empty range {part!r}")
            values.update(range(lo, hi + 1))
        else:
            values.add(int(part))
    if not values:
        raise ValueError(f"no values in {text!r}")
    return sorted(values)


def _write(path: Path, text: str) -> None:
    path.write_text(text)
    print(f"wrote {path}")


def _with_ext(prefix: Path, ext: str) -> Path:
    return prefix.parent / (prefix.name + ext)


def cmd_construct(args: argparse.Namespace) -> int:
    if args.config:
        spec = cons.parse_construction_config(Path(args.config).read_text())
    else:
        missing = [
            name
            for name, value in (
                ("--family", args.family),
                ("--nodes", args.nodes),
                ("--leaders", args.leaders),
            )
            if value is None
        ]
        if missing:
            raise ValueError(f"construct needs {', '.join(missing)} (or --config)")
        spec = cons.ConstructionSpec(args.family, args.nodes, args.leaders, args.diameter)
    net = cons.build(spec)
    suffix = f"_d{spec.d}" if spec.d is not None else ""
    base = f"{spec.family}_n{spec.n}_nl{spec.n_leaders}{suffix}"
    prefix = _resolve_out(args.out, base)
    fmt = args.format or "all"
    if fmt in ("edgelist", "all"):
        _write(_with_ext(prefix, ".edges"), to_edge_list_text(net.graph))
    if fmt in ("dot", "all"):
        _write(_with_ext(prefix, ".dot"), export_dot(net.graph, net.leaders, net.layout))
    if fmt == "all":
        layout_text = "".join(f"{v} {net.layout[v]}\n" for v in range(net.graph.n))
        _write(_with_ext(prefix, ".layout"), layout_text)
    print(
        f"family={spec.family} n={spec.n} leaders={spec.n_leaders} "
        f"edges={net.graph.edge_count()} diameter={net.graph.diameter()}"
    )
    return EXIT_OK


def cmd_verify(args: argparse.Namespace) -> int:
    g = _read_graph(args.graph, n=args.nodes)
    leaders = LeaderSet(_parse_id_list(args.leaders))
    leaders.validate_for(g)
    zfs = is_zfs(g, leaders)
    print(f"zfs: {'yes' if zfs else 'no'}")
    print(f"unique-process: {'yes' if is_unique_process(g, leaders) else 'no'}")
    if not zfs:
        print("maximal: n/a (leaders are not a zero forcing set)")
        return EXIT_VERIFICATION_FAILED
    maximal, violations = is_maximal_for_zfs(g, leaders)
    print(f"maximal: {'yes' if maximal else 'no'}")
    for u, v in violations:
        print(f"violation: {u} {v}")
    return EXIT_OK if maximal else EXIT_VERIFICATION_FAILED


def cmd_spectrum(args: argparse.Namespace) -> int:
    g = _read_graph(args.graph, n=args.nodes)
    report = rob.spectrum(g, tol=args.tol)
    print(f"n: {report.n}")
    print(f"edges: {g.edge_count()}")
    print(f"lambda2: {report.lambda2:.9g}")
    print(f"kirchhoff: {report.kirchhoff:.9g}")
    if args.eigenvalues:
        print("eigenvalues: " + " ".join(f"{x:.9g}" for x in report.eigenvalues))
    return EXIT_OK


def cmd_sweep(args: argparse.Namespace) -> int:
    families = [cons.normalize_family(f) for f in args.families.split(",") if f.strip()]
    leader_values = _parse_int_values(args.leaders)
    rows, notes = rob.sweep(
        args.nodes, families, leader_values, g3_d=args.g3_diameter, tol=args.tol
    )
    for note in notes:
        print(f"note: {note}")
    out = _resolve_out(args.out, f"sweep_n{args.nodes}.csv")
    _write(out, rob.sweep_csv(rows))
    return EXIT_OK


def cmd_grammar(args: argparse.Namespace) -> int:
    n, k = args.nodes, args.leaders
    if args.rules == "r1":
        if args.diameter is None:
            raise ValueError("grammar r1 needs --diameter")
        if n != k * args.diameter:
            raise cons.InfeasibleSpecError(
                f"grammar r1 needs nodes = leaders * diameter "
                f"(got {n} != {k} * {args.diameter})"
            )
        rules = gram.grammar_r1(k, args.diameter)
        target = cons.build_g1_bar(n, k, args.diameter)
    else:
        rules = gram.grammar_r2(n, k, r6_same_index_only=args.r6_same_index)
        target = cons.build_g2_bar(n, k)

    frames_dir: Path | None = None
    if args.frames:
        frames_dir = Path(args.frames)
        frames_dir.mkdir(parents=True, exist_ok=True)

    def dump_frame(idx: int, state: gram.LabeledGraph) -> None:
        assert frames_dir is not None
        text = export_dot(state.graph, labels=state.label_texts())
        (frames_dir / f"step_{idx:04d}.dot").write_text(text)

    initial = gram.initial_state(n)
    if frames_dir is not None:
        dump_frame(0, initial)
    on_step = (lambda i, state, match: dump_frame(i, state)) if frames_dir else None
    final, schedule = gram.run_to_fixpoint(
        initial,
        rules,
        seed=args.seed,
        prefer_phase="pi2" if args.prefer_pi2 else None,
        on_step=on_step,
    )
    base = f"grammar_{args.rules}_n{n}_nl{k}_seed{args.seed}"
    prefix = _resolve_out(args.out, base)
    _write(_with_ext(prefix, ".trace"), schedule.to_text())
    leader_ids = LeaderSet(tuple(final.nodes_with_kind(gram.LEADER)))
    _write(
        _with_ext(prefix, ".dot"),
        export_dot(final.graph, leader_ids, final.label_texts()),
    )
    matches = gram.label_isomorphic(final, target)
    print(f"steps: {len(schedule.steps)}")
    print(f"edges: {final.graph.edge_count()}")
    print(f"matches construction: {'yes' if matches else 'no'}")
    return EXIT_OK if matches else EXIT_VERIFICATION_FAILED


def cmd_oracle(args: argparse.Namespace) -> int:
    g = _read_graph(args.graph, n=args.nodes)
    leaders = LeaderSet(_parse_id_list(args.leaders))
    report = ssc.randomized_ssc_check(
        g, leaders, trials=args.trials, seed=args.seed, tol=args.tol
    )
    print(report.summary())
    if args.out:
        _write(Path(args.out), report.to_csv())
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="zfnets",
        description=__doc__,
        formatter_class=argparse.RawDescriptionHelpFormatter,
    )
    sub = parser.add_subparsers(dest="command", metavar="command")

    p = sub.add_parser("construct", help="build a network family and write its files")
    p.add_argument("--family", choices=cons.FAMILIES, help="network family")
    p.add_argument("--nodes", type=int, help="total node count N")
    p.add_argument("--leaders", type=int, help="leader count")
    p.add_argument("--diameter", type=int, help="target diameter (g1/g1bar/g3bar)")
    p.add_argument("--config", help="key=value file with family, n, nl, d")
    p.add_argument("--out", help="output path prefix (default under ZFNETS_OUT_DIR)")
    p.add_argument("--format", choices=("dot", "edgelist", "all"),
                   help="restrict outputs (default: edge list + DOT + layout)")
    p.set_defaults(func=cmd_construct)

    p = sub.add_parser("verify", help="check ZFS, unique process, and maximality")
    p.add_argument("--graph", required=True, help="edge-list file")
    p.add_argument("--leaders", required=True, help="comma-separated leader ids")
    p.add_argument("--nodes", type=int, help="override node count")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("spectrum", help="Laplacian spectrum and robustness metrics")
    p.add_argument("--graph", required=True, help="edge-list file")
    p.add_argument("--nodes", type=int, help="override node count")
    p.add_argument("--tol", type=float, default=rob.DEFAULT_TOL)
    p.add_argument("--eigenvalues", action="store_true", help="print the full spectrum")
    p.set_defaults(func=cmd_spectrum)

    p = sub.add_parser("sweep", help="family comparison table at fixed N (CSV)")
    p.add_argument("--nodes", type=int, required=True)
    p.add_argument("--families", default="g1bar,g2bar,g3bar",
                   help="comma-separated families")
    p.add_argument("--leaders", default="2-10", help="leader counts, e.g. 2-10 or 2,3,5")
    p.add_argument("--g3-diameter", type=int, help="fixed g3bar diameter (default: range midpoint)")
    p.add_argument("--tol", type=float, default=rob.DEFAULT_TOL)
    p.add_argument("--out", help="output CSV path")
    p.set_defaults(func=cmd_sweep)

    p = sub.add_parser("grammar", help="run a distributed grammar to fixpoint")
    p.add_argument("--rules", choices=("r1", "r2"), required=True)
    p.add_argument("--nodes", type=int, required=True)
    p.add_argument("--leaders", type=int, required=True)
    p.add_argument("--diameter", type=int, help="target diameter (r1 only)")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--prefer-pi2", action="store_true",
                   help="always take an edge-maximizing match when one exists")
    p.add_argument("--r6-same-index", action="store_true",
                   help="use the literal same-subscript fan-out rule in r2")
    p.add_argument("--frames", help="directory for per-step DOT frames")
    p.add_argument("--out", help="output path prefix for trace and final DOT")
    p.set_defaults(func=cmd_grammar)

    p = sub.add_parser("oracle", help="randomized controllability cross-check")
    p.add_argument("--graph", required=True, help="edge-list file")
    p.add_argument("--leaders", required=True, help="comma-separated leader ids")
    p.add_argument("--nodes", type=int, help="override node count")
    p.add_argument("--trials", type=int, default=50)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--tol", type=float, default=ssc.DEFAULT_TOL)
    p.add_argument("--out", help="per-trial CSV output path")
    p.set_defaults(func=cmd_oracle)

    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if not hasattr(args, "func"):
        parser.print_help()
        return EXIT_INFEASIBLE
    try:
        return args.func(args)
    except cons.InfeasibleSpecError as exc:
        print(f"error: infeasible spec: {exc}", file=sys.stderr)
        return EXIT_INFEASIBLE
    except cons.ConstructionMismatchError as exc:
        print(f"error: construction self-check failed: {exc}", file=sys.stderr)
        return EXIT_VERIFICATION_FAILED
    except (rob.ConvergenceError, gram.NonConvergenceError) as exc:
        print(f"error: did not converge: {exc}", file=sys.stderr)
        return EXIT_NONCONVERGENCE
    except (ValueError, OSError, GraphDisconnectedError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INFEASIBLE


if __name__ == "__main__":
    sys.exit(main())
