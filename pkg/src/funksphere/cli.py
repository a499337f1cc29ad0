"""Command line front end.

Subcommands:

  sample    evaluate a builtin function on a sphere grid, write a grid file
  forward   apply the shifted subsphere-mean transform to a grid file
  inverse   spectrally invert a transformed grid file
  spectrum  per-degree energy table (CSV) of a grid file
  verify    run the identity check suite, print CSV rows

Exit codes: 0 success; 1 usage or input error; 2 input not in the
transform's range; 3 one or more verification checks failed.

The environment variable FUNKSPHERE_THREADS, when set to a positive
integer, caps the thread count of the underlying BLAS/OpenMP pools.  It is
applied before numpy is imported, which is why this module (and the
package root) defer that import.
"""

import os
import sys


def _configure_threads():
    raw = os.environ.get("FUNKSPHERE_THREADS")
    if raw is None:
        return
    try:
        n = int(raw)
        if n < 1:
            raise ValueError
    except ValueError:
        sys.stderr.write(
            f"warning: ignoring FUNKSPHERE_THREADS={raw!r}; "
            "expected a positive integer\n")
        return
    for var in ("OMP_NUM_THREADS", "OPENBLAS_NUM_THREADS",
                "MKL_NUM_THREADS", "NUMEXPR_NUM_THREADS"):
        os.environ.setdefault(var, str(n))


_configure_threads()

import argparse  # noqa: E402

import numpy as np  # noqa: E402

from .errors import (ConditioningError, DomainError, GridFileError,  # noqa: E402
                     NotInRangeError, ResolutionError)
from .functions import BUILTIN_NAMES, make_function  # noqa: E402
from .gridfile import read_grid_function, write_grid_function  # noqa: E402
from .harmonics import analyze  # noqa: E402
from .quadrature import GridFunction, max_bandlimit, sphere_grid  # noqa: E402
from .transforms import (OperatorConfig, inverse_spherical_transform,  # noqa: E402
                         spherical_transform_direct,
                         spherical_transform_factored)
from .verify import run_checks  # noqa: E402


def _build_parser():
    parser = argparse.ArgumentParser(
        prog="funksphere",
        description="Subsphere-mean transforms on the unit sphere (d = 3, 4).")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser(
        "sample", help="evaluate a builtin function on a grid")
    p.add_argument("--function", required=True,
                   help="builtin spec, e.g. const, coord_d, coord_d_sq, "
                        "gauss_bump(c1,..,cd,width), harmonic(n,k), "
                        "symmetric_z(z,seed=...,N=...); "
                        "names: " + ", ".join(sorted(BUILTIN_NAMES)))
    p.add_argument("--d", type=int, default=3, choices=(3, 4))
    p.add_argument("--L", type=int, required=True,
                   help="Gauss latitude count")
    p.add_argument("--M", type=int, required=True,
                   help="uniform longitude count")
    p.add_argument("--out", required=True)
    p.set_defaults(func=cmd_sample)

    p = sub.add_parser(
        "forward", help="apply the shifted transform to a grid file")
    p.add_argument("--z", type=float, required=True)
    p.add_argument("--m", type=int, default=64,
                   help="subsphere quadrature node count")
    p.add_argument("--in", dest="in_path", required=True)
    p.add_argument("--out", required=True)
    p.add_argument("--method", choices=("direct", "factored"),
                   default="direct")
    p.add_argument("--check", action="store_true",
                   help="also run the other method, report the discrepancy")
    p.set_defaults(func=cmd_forward)

    p = sub.add_parser(
        "inverse", help="spectrally invert a transformed grid file")
    p.add_argument("--z", type=float, required=True)
    p.add_argument("--N", type=int, required=True,
                   help="bandlimit of the reconstruction")
    p.add_argument("--in", dest="in_path", required=True)
    p.add_argument("--out", required=True)
    p.set_defaults(func=cmd_inverse)

    p = sub.add_parser(
        "spectrum", help="per-degree energy table of a grid file")
    p.add_argument("--in", dest="in_path", required=True)
    p.add_argument("--N", type=int, default=None,
                   help="highest degree (default: what the grid resolves)")
    p.add_argument("--s", type=float, default=0.0,
                   help="Sobolev smoothness for the weighted column")
    p.set_defaults(func=cmd_spectrum)

    p = sub.add_parser(
        "verify", help="run the identity check suite")
    p.add_argument("--z", default="0,0.5,0.9",
                   help="comma separated shifts")
    p.add_argument("--d", default="3,4",
                   help="comma separated dimensions")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--tol", type=float, default=None,
                   help="override every check's tolerance")
    p.set_defaults(func=cmd_verify)
    return parser


def cmd_sample(args):
    f, z = make_function(args.function, args.d)
    grid = sphere_grid(args.d, args.L, args.M)
    values = np.asarray(f(grid.nodes), dtype=float)
    gf = GridFunction(grid, values)
    write_grid_function(args.out, gf, z=z,
                        description=f"sample {args.function}")
    print(f"wrote {args.out} ({grid.size} values, d={args.d}, "
          f"L={args.L}, M={args.M})")
    return 0


def cmd_forward(args):
    f, header = read_grid_function(args.in_path)
    grid = f.grid
    N = min(max_bandlimit(grid), (args.m - 2) // 2)
    cfg = OperatorConfig(z=args.z, L=grid.L, M=grid.M, m=args.m, N=N,
                         d=grid.d)
    if args.method == "direct":
        out = spherical_transform_direct(f, cfg)
    else:
        out = spherical_transform_factored(f, cfg)
    desc = f"forward z={args.z} method={args.method} m={args.m} N={N}"
    if args.check:
        if args.method == "direct":
            other = spherical_transform_factored(f, cfg)
        else:
            other = spherical_transform_direct(f, cfg)
        resid = float(np.max(np.abs(out.values - other.values)))
        desc += f" check_residual={resid:.3e}"
        print(f"method check: direct vs factored residual {resid:.3e}")
    write_grid_function(args.out, out, z=args.z, description=desc)
    print(f"wrote {args.out} ({out.grid.size} values)")
    return 0


def cmd_inverse(args):
    g, header = read_grid_function(args.in_path)
    grid = g.grid
    cfg = OperatorConfig(z=args.z, L=grid.L, M=grid.M,
                         m=max(4, 2 * args.N + 2), N=args.N, d=grid.d)
    try:
        back = inverse_spherical_transform(g, cfg)
    except NotInRangeError as exc:
        if exc.odd_fraction is not None:
            raise
        coeffs = analyze(g, args.N)
        total = sum(float(np.sum(b ** 2)) for b in coeffs.blocks)
        odd = sum(float(np.sum(b ** 2))
                  for n, b in enumerate(coeffs.blocks) if n % 2 == 1)
        frac = odd / total if total > 0.0 else float("nan")
        raise NotInRangeError(str(exc), odd_fraction=frac) from None
    write_grid_function(args.out, back, z=args.z,
                        description=f"inverse z={args.z} N={args.N}")
    print(f"wrote {args.out} ({back.grid.size} values)")
    return 0


def cmd_spectrum(args):
    f, header = read_grid_function(args.in_path)
    N = args.N if args.N is not None else max_bandlimit(f.grid)
    if N < 0:
        raise DomainError("requested degree range is empty")
    coeffs = analyze(f, N)
    d, s = f.grid.d, args.s
    print("n,energy,sobolev_weighted_energy")
    for n in range(N + 1):
        energy = float(np.sum(coeffs.blocks[n] ** 2))
        weight = (n + (d - 2) / 2.0) ** (2.0 * s)
        print(f"{n},{energy:.12e},{energy * weight:.12e}")
    return 0


def _parse_list(text, kind, what):
    try:
        items = [kind(part) for part in text.split(",") if part.strip()]
    except ValueError:
        raise DomainError(f"could not parse {what} list {text!r}")
    if not items:
        raise DomainError(f"empty {what} list")
    return items


def cmd_verify(args):
    z_list = _parse_list(args.z, float, "shift")
    d_list = _parse_list(args.d, int, "dimension")
    for d in d_list:
        if d not in (3, 4):
            raise DomainError("dimension must be 3 or 4")
    rows = run_checks(z_list, d_list, seed=args.seed, tol_override=args.tol)
    print("check,d,z,residual,tolerance,status")
    failed = 0
    for r in rows:
        print(f"{r.name},{r.d},{r.z:g},{r.residual:.6e},"
              f"{r.tolerance:.6e},{r.status}")
        if r.status == "fail":
            failed += 1
    counts = {"pass": 0, "fail": 0, "skip": 0}
    for r in rows:
        counts[r.status] += 1
    print(f"# {counts['pass']} pass, {counts['fail']} fail, "
          f"{counts['skip']} skip", file=sys.stderr)
    return 3 if failed else 0


def main(argv=None):
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        code = exc.code
        if code in (0, None):
            return 0
        return 1
    try:
        return args.func(args)
    except NotInRangeError as exc:
        sys.stderr.write(f"error: {exc}\n")
        if exc.odd_fraction is not None:
            sys.stderr.write(
                f"odd-energy fraction: {exc.odd_fraction:.6e}\n")
        return 2
    except (DomainError, ResolutionError, ConditioningError, GridFileError,
            OSError, ValueError) as exc:
        sys.stderr.write(f"error: {exc}\n")
        return 1


if __name__ == "__main__":
    sys.exit(main())
