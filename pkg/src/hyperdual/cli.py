"""Command-line surface: one binary, one verb per pipeline stage.

Exit status contract: 0 success, 1 duality check failed, 2 bad arguments or
unreadable/ill-formed input, 3 computation error (size limits, search budget,
non-convergence).  Outputs are byte-deterministic for identical invocations.
"""

from __future__ import annotations

import os

# Cap numerical-library parallelism before numpy is first imported; an
# explicit *_NUM_THREADS already in the environment always wins.
_t = os.environ.get("HYPERDUAL_THREADS", "").strip()
if _t.isdigit() and int(_t) > 0:
    for _var in ("OMP_NUM_THREADS", "OPENBLAS_NUM_THREADS",
                 "MKL_NUM_THREADS", "NUMEXPR_NUM_THREADS"):
        os.environ.setdefault(_var, _t)
del _t

import argparse
import sys
from pathlib import Path

from .duality import (
    estimate_tc_robustness,
    format_report,
    format_scan_csv,
    scan_transition,
    verify_duality,
)
from .errors import FormatError, HyperdualError, UnsupportedDimsError
from .hypergraph import (
    Hypergraph,
    dual,
    format_hypergraph,
    is_self_dual,
    orthogonal,
    read_hypergraph,
)
from .lattices import (
    build_graph,
    hypergraph_from_spec_string,
    parse_lattice_spec,
)
from .pauli import ising_like_hamiltonian

EXIT_OK = 0
EXIT_CHECK_FAILED = 1
EXIT_USAGE = 2
EXIT_COMPUTE = 3


def _load_hypergraph(arg: str) -> Hypergraph:
    """A path to an existing file wins; otherwise treat as a lattice spec."""
    if Path(arg).exists():
        return read_hypergraph(arg, allow_duplicates=True)
    try:
        return hypergraph_from_spec_string(arg)
    except (FormatError, UnsupportedDimsError) as exc:
        raise FormatError(
            f"input {arg!r} is neither an existing file nor a valid "
            f"lattice spec ({exc})") from exc


def _parse_grid(text: str) -> list[float]:
    parts = text.split(":")
    if len(parts) != 3:
        raise FormatError(f"grid must be start:stop:step, got {text!r}")
    try:
        start, stop, step = (float(p) for p in parts)
    except ValueError as exc:
        raise FormatError(f"non-numeric grid component in {text!r}") from exc
    if step <= 0:
        raise FormatError("grid step must be positive")
    if stop < start:
        raise FormatError("grid stop must not be below start")
    count = int((stop - start) / step + 1e-9) + 1
    return [start + i * step for i in range(count)]


def _emit(text: str, out: str | None) -> None:
    if out is None:
        sys.stdout.write(text)
    else:
        with open(out, "w", encoding="utf-8") as fh:
            fh.write(text)


def _build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(
        prog="hyperdual",
        description="Hypergraph duality toolkit: combinatorial transforms "
                    "and spectral verification of the coupling-swap duality.")
    sub = ap.add_subparsers(dest="verb", required=True)

    def add_common(p, grid=False):
        p.add_argument("input", help="hypergraph file or lattice spec "
                                     "(e.g. chain:8:periodic, plaquette:3x3)")
        p.add_argument("-o", "--output", default=None,
                       help="output file (default: stdout)")
        if grid:
            p.add_argument("--grid", required=True,
                           help="ratio grid start:stop:step")
            p.add_argument("--delta", type=float, default=1e-3,
                           help="ratio offset for the overlap derivative")
            p.add_argument("--seed", type=int, default=None,
                           help="eigensolver seed (fixed default)")
            p.add_argument("--model-id", default=None,
                           help="label recorded in the result")
            p.add_argument("--plot", default=None, metavar="PNG",
                           help="also render panels to this file")

    p = sub.add_parser("dual", help="transpose vertices and edges")
    add_common(p)
    p = sub.add_parser("ortho", help="orthogonal-complement edge basis")
    add_common(p)

    p = sub.add_parser("check-selfdual",
                       help="decide dual-isomorphism, print a witness")
    p.add_argument("input")
    p.add_argument("--budget", type=int, default=500_000,
                   help="backtracking node budget")

    p = sub.add_parser("generate", help="build a lattice-model hypergraph")
    p.add_argument("spec", help="kind:dims[:boundary] or plaquette:LxL, "
                                "hypercubic:d1x..xdn, colex2:IxJ")
    p.add_argument("-o", "--output", default=None)

    p = sub.add_parser("verify-duality",
                       help="compare sector spectrum against the dual model")
    p.add_argument("input")
    p.add_argument("--j", type=float, required=True, help="stabilizer coupling")
    p.add_argument("--h", type=float, required=True, help="field strength")
    p.add_argument("--tol", type=float, default=1e-9)
    p.add_argument("-o", "--output", default=None)
    p.add_argument("--plot", default=None, metavar="PNG",
                   help="also render the spectra comparison to this file")

    p = sub.add_parser("scan",
                       help="sweep the interaction/field ratio of the "
                            "transverse-field model on a hypergraph")
    add_common(p, grid=True)

    p = sub.add_parser("tc-robustness",
                       help="critical-ratio scan for the code on a graph")
    p.add_argument("spec", help="graph spec kind:dims[:boundary]")
    p.add_argument("-o", "--output", default=None)
    p.add_argument("--grid", required=True, help="ratio grid start:stop:step")
    p.add_argument("--delta", type=float, default=1e-3)
    p.add_argument("--seed", type=int, default=None)
    p.add_argument("--model-id", default=None)
    p.add_argument("--plot", default=None, metavar="PNG")
    return ap


def main(argv=None) -> int:
    ap = _build_parser()
    try:
        args = ap.parse_args(argv)
    except SystemExit as exc:
        # argparse exits 2 on bad flags and 0 on --help; pass both through.
        return int(exc.code or 0)
    try:
        return _dispatch(args)
    except (FormatError, UnsupportedDimsError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except FileNotFoundError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except HyperdualError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_COMPUTE
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


def _dispatch(args) -> int:
    if args.verb == "dual":
        h = _load_hypergraph(args.input)
        _emit(format_hypergraph(dual(h)), args.output)
        return EXIT_OK

    if args.verb == "ortho":
        h = _load_hypergraph(args.input)
        _emit(format_hypergraph(orthogonal(h)), args.output)
        return EXIT_OK

    if args.verb == "check-selfdual":
        h = _load_hypergraph(args.input)
        witness = is_self_dual(h, node_budget=args.budget)
        if witness is None:
            print("NOT-SELF-DUAL")
            return EXIT_OK
        print("SELF-DUAL")
        print("vertex_map " + " ".join(str(v + 1)
                                       for v in witness.vertex_map))
        print("edge_map " + " ".join(str(e + 1) for e in witness.edge_map))
        return EXIT_OK

    if args.verb == "generate":
        h = hypergraph_from_spec_string(args.spec)
        _emit(format_hypergraph(h), args.output)
        return EXIT_OK

    if args.verb == "verify-duality":
        h = _load_hypergraph(args.input)
        if args.j <= 0:
            raise FormatError("--j must be positive")
        if args.h < 0:
            raise FormatError("--h must be non-negative")
        report = verify_duality(h, args.j, args.h, tol=args.tol)
        _emit(format_report(report), args.output)
        if args.plot is not None:
            from .plotting import plot_duality
            plot_duality(report, args.plot)
        return EXIT_OK if report.passed else EXIT_CHECK_FAILED

    if args.verb == "scan":
        h = _load_hypergraph(args.input)
        ratios = _parse_grid(args.grid)
        name = args.model_id or args.input
        kwargs = {} if args.seed is None else {"seed": args.seed}

        def model(rho, _h=h):
            return ising_like_hamiltonian(_h, a=rho, b=1.0)

        result = scan_transition(model, ratios, args.delta,
                                 model_id=name, **kwargs)
        _emit(format_scan_csv(result), args.output)
        if args.plot is not None:
            from .plotting import plot_scan
            plot_scan(result, args.plot)
        return EXIT_OK

    if args.verb == "tc-robustness":
        spec = parse_lattice_spec(args.spec)
        g = build_graph(spec)
        ratios = _parse_grid(args.grid)
        kwargs = {} if args.seed is None else {"seed": args.seed}
        if args.model_id is not None:
            kwargs["model_id"] = args.model_id
        result = estimate_tc_robustness(g, ratios, delta=args.delta, **kwargs)
        _emit(format_scan_csv(result), args.output)
        if args.plot is not None:
            from .plotting import plot_scan
            plot_scan(result, args.plot)
        return EXIT_OK

    raise AssertionError(f"unhandled verb {args.verb!r}")


if __name__ == "__main__":
    sys.exit(main())
