"""
Command-line entry point.

Exit codes: 0 success, 1 validation failure, 2 input error, 3 chain cannot
close, 4 domain or cost guard, 5 internal invariant violation.
"""

from __future__ import annotations

import argparse
import sys
from contextlib import contextmanager
from pathlib import Path
from typing import Iterator, TextIO

import numpy as np

from closedchain.chain import TOL_CLOSURE, ChainSpec, circular_residual, closure_residual
from closedchain.errors import (
    ChainError,
    CostGuardError,
    DomainError,
    InfeasibleChainError,
    InputError,
)
from closedchain.fileio import (
    load_chain,
    load_cube_point,
    read_angles_csv,
    write_angles_csv,
    write_region_csv,
)
from closedchain.oracle import MAX_GRID_N, circularity_reports, run_oracle_suite
from closedchain.sampler import OrientationVector, path_in_cube, sample_angles
from closedchain.semidiagonal import _in_q_array, cube_to_c
from closedchain.svg import configurations_svg, path_strip_svg, region_svg

EXIT_OK = 0
EXIT_FAIL = 1
EXIT_INPUT = 2
EXIT_INFEASIBLE = 3
EXIT_DOMAIN = 4
EXIT_INTERNAL = 5


class InvariantViolation(RuntimeError):
    pass


@contextmanager
def _output(path: str | None) -> Iterator[TextIO]:
    if path is None or path == "-":
        yield sys.stdout
    else:
        with open(path, "w", newline="") as fh:
            yield fh


def _write_svg(path: str | None, text: str) -> None:
    if path:
        Path(path).write_text(text)


def _eps_policy(value: str, chain: ChainSpec):
    if value in ("random", "all"):
        return value
    try:
        eps = OrientationVector(value)
    except ChainError as exc:
        raise InputError(str(exc)) from exc
    if len(eps) != chain.n - 2:
        raise InputError(f"--eps needs {chain.n - 2} bits for this chain, got {len(eps)}")
    return eps


def cmd_sample(args: argparse.Namespace) -> int:
    chain = load_chain(args.chain)
    chain.require_feasible()
    policy = _eps_policy(args.eps, chain)
    out = sample_angles(chain, args.seed, args.count, policy, args.beta1, args.closed)
    scale = chain.total if args.closed else chain.total**2
    if out.residual.size and out.residual.max() > args.tol * scale:
        raise InvariantViolation(f"sampled residual {out.residual.max():.3g} above tolerance")
    with _output(args.out) as fh:
        write_angles_csv(fh, out.angles, args.closed)
    _write_svg(args.svg, configurations_svg(chain, out.angles, args.closed))
    print(f"{out.angles.shape[0]} configurations, acceptance {out.acceptance:.4f}", file=sys.stderr)
    return EXIT_OK


def region_grid(chain: ChainSpec, grid: int) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """``(C_4, C_3, in_q)`` over a ``grid x grid`` raster of the square cube."""
    if chain.n != 5:
        raise DomainError("region plotting defined for five links")
    if grid < 1:
        raise InputError("--grid must be positive")
    axis = np.linspace(-1.0, 1.0, grid) if grid > 1 else np.zeros(1)
    s1, s2 = np.meshgrid(axis, axis, indexing="ij")
    s = np.stack([s1.ravel(), s2.ravel()], axis=1)
    c = cube_to_c(chain, s)
    inq = _in_q_array(chain, c, chain.tol_nonneg)
    return c[:, 1], c[:, 0], inq


def cmd_region(args: argparse.Namespace) -> int:
    chain = load_chain(args.chain)
    chain.require_feasible()
    c4, c3, inq = region_grid(chain, args.grid)
    with _output(args.out) as fh:
        write_region_csv(fh, c4, c3, inq)
    _write_svg(args.svg, region_svg(c4, c3, inq, chain.links[0] * chain.links[1]))
    return EXIT_OK


def cmd_validate(args: argparse.Namespace) -> int:
    chain = load_chain(args.chain)
    closed, angles = read_angles_csv(args.csv)
    if angles.shape[1] != chain.n - 1:
        raise InputError(f"rows have {angles.shape[1]} angles, chain needs {chain.n - 1}")
    tol_sq = args.tol * chain.total**2
    finite = np.all(np.isfinite(angles), axis=1)
    safe = np.where(finite[:, None], angles, 0.0)
    circ = np.atleast_1d(circular_residual(chain, safe))
    clos = np.atleast_1d(closure_residual(chain, safe))
    rep = circularity_reports(chain, safe, tol_sq)
    ok = finite & rep["circular"] & rep["in_sd_q"] & rep["diagonal"]
    if closed:
        ok &= clos <= args.tol * chain.total
    with _output(args.out) as fh:
        fh.write("row,circular_residual,closure_residual,circular,in_sd_q,diagonal,pass\n")
        for i in range(angles.shape[0]):
            fh.write(
                f"{i},{circ[i]:.6g},{clos[i]:.6g},{int(rep['circular'][i])},"
                f"{int(rep['in_sd_q'][i])},{int(rep['diagonal'][i])},{int(ok[i])}\n"
            )
    failed = int((~ok).sum())
    print(f"{angles.shape[0] - failed} of {angles.shape[0]} rows pass", file=sys.stderr)
    return EXIT_OK if failed == 0 else EXIT_FAIL


def cmd_path(args: argparse.Namespace) -> int:
    chain = load_chain(args.chain)
    chain.require_feasible()
    s_from = load_cube_point(args.from_)
    s_to = load_cube_point(args.to)
    if args.eps in ("random", "all"):
        raise InputError("--eps for path must be an explicit bit string")
    eps = _eps_policy(args.eps, chain)
    frames = path_in_cube(chain, s_from, s_to, args.steps, eps, args.beta1)
    rows = np.array([f.alpha if f is not None else np.full(chain.n - 1, np.nan) for f in frames])
    res = [f.residual for f in frames if f is not None]
    if res and max(res) > TOL_CLOSURE * chain.total:
        raise InvariantViolation(f"path residual {max(res):.3g} above tolerance")
    with _output(args.out) as fh:
        write_angles_csv(fh, rows, closed=True)
    _write_svg(args.svg, path_strip_svg(chain, [None if f is None else f.alpha for f in frames]))
    gaps = sum(f is None for f in frames)
    if gaps:
        print(f"{gaps} path samples fell outside the reachable range (written as nan)", file=sys.stderr)
    return EXIT_OK


def cmd_oracle(args: argparse.Namespace) -> int:
    chain = load_chain(args.chain)
    if chain.n > MAX_GRID_N:
        raise CostGuardError(f"oracle runs are limited to n <= {MAX_GRID_N}")
    summary = run_oracle_suite(chain, args.resolution, args.grid_tol, args.count, args.seed)
    with _output(args.out) as fh:
        fh.write("\n".join(summary.lines()) + "\n")
    return EXIT_OK if summary.consistent else EXIT_FAIL


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="closedchain", description="Sample and check configurations of planar closed chains."
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, tol=True):
        p.add_argument("--chain", required=True, help='JSON file {"links": [...]}')
        p.add_argument("--out", help="output CSV (default stdout)")
        if tol:
            p.add_argument("--tol", type=float, default=TOL_CLOSURE, help="relative tolerance")

    p = sub.add_parser("sample", help="random circular or closed configurations")
    common(p)
    p.add_argument("--count", type=int, default=10)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--eps", default="random", help="bit string, 'random' or 'all'")
    p.add_argument("--beta1", type=float, default=0.0)
    p.add_argument("--closed", action="store_true")
    p.add_argument("--svg")
    p.set_defaults(func=cmd_sample)

    p = sub.add_parser("region", help="semi-diagonal region of a five-link chain")
    common(p, tol=False)
    p.add_argument("--grid", type=int, default=101)
    p.add_argument("--svg")
    p.set_defaults(func=cmd_region)

    p = sub.add_parser("validate", help="check an angle CSV against a chain")
    common(p)
    p.add_argument("csv")
    p.set_defaults(func=cmd_validate)

    p = sub.add_parser("path", help="closed configurations along a cube segment")
    common(p, tol=False)
    p.add_argument("--from", dest="from_", required=True, help='JSON {"s": [...]} or "s1,s2,..."')
    p.add_argument("--to", required=True)
    p.add_argument("--steps", type=int, default=10)
    p.add_argument("--eps", required=True)
    p.add_argument("--beta1", type=float, default=0.0)
    p.add_argument("--svg")
    p.set_defaults(func=cmd_path)

    p = sub.add_parser("oracle", help="brute-force equivalence checks (n <= 5)")
    common(p, tol=False)
    p.add_argument("--resolution", type=int, default=24)
    p.add_argument("--tol", dest="grid_tol", type=float, default=None,
                   help="absolute circularity tolerance for grid points")
    p.add_argument("--count", type=int, default=500, help="sampled configurations to check")
    p.add_argument("--seed", type=int, default=0)
    p.set_defaults(func=cmd_oracle)
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_INPUT if exc.code else EXIT_OK
    try:
        return args.func(args)
    except InputError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except InfeasibleChainError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INFEASIBLE
    except (DomainError, CostGuardError, ChainError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_DOMAIN
    except InvariantViolation as exc:
        print(f"internal error: {exc}", file=sys.stderr)
        return EXIT_INTERNAL


if __name__ == "__main__":
    sys.exit(main())
