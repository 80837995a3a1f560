"""Command line front end.

Exit codes: 0 success, 1 computation error, 2 usage error. All numeric
output is printed at full precision so runs can be diffed; scan reports
are rendered by the deterministic serializer.

A checkpoint cache file named by the HL_CACHE environment variable is
loaded (read-only) by the heavy subcommands when it exists; only the
`cache` subcommand writes one.
"""

from __future__ import annotations

import argparse
import math
import os
import sys

from . import fermat, gammalab
from .errors import LadderLabError
from .gram import DEFAULT_STRATEGY, STRATEGIES, gram_points
from .integral import CheckpointCache, default_cache_path, hl_integral, integrate_segment
from .ladder import build_tower
from .zeta import theta, z_function


def _load_cache() -> CheckpointCache:
    path = default_cache_path()
    if path and os.path.exists(path):
        return CheckpointCache.load(path)
    return CheckpointCache()


def _emit(text: str, out: str | None) -> None:
    if out:
        with open(out, "w", newline="\n", encoding="utf-8") as fh:
            fh.write(text if text.endswith("\n") else text + "\n")
    else:
        sys.stdout.write(text if text.endswith("\n") else text + "\n")


def _floats(spec: str) -> list[float]:
    try:
        vals = [float(tok) for tok in spec.split(",") if tok.strip()]
    except ValueError as exc:
        raise argparse.ArgumentTypeError(f"bad float list {spec!r}") from exc
    if not vals:
        raise argparse.ArgumentTypeError("empty float list")
    return vals


def _cmd_zeta(args) -> int:
    print("t,z,z_sq,theta")
    for t in args.t:
        s = z_function(t)
        th = theta(t) if t >= 10.0 else math.nan
        print(f"{t:.17g},{s.z:.17g},{s.zeta_sq:.17g},{th:.17g}")
    return 0


def _cmd_integral(args) -> int:
    if args.frm == 0.0:
        res = hl_integral(args.to, cache=_load_cache(), tol=args.tol)
    else:
        res = integrate_segment(args.frm, args.to, tol=args.tol)
    print(f"value={res.value:.17g}")
    print(f"abs_error_estimate={res.abs_error_estimate:.17g}")
    print(f"node_count={res.node_count}")
    return 0


def _cmd_ladder(args) -> int:
    tower = build_tower(args.T, args.k, cache=_load_cache(), tol=args.tol)
    print("rung,t")
    for r, t in enumerate(tower.iterates):
        print(f"{r},{t:.17g}")
    return 0


def _cmd_gram(args) -> int:
    slc = gram_points(args.frm, args.to)
    _emit(slc.to_csv(), args.out)
    return 0


def _cmd_functional(args) -> int:
    cache = _load_cache()
    fid = args.id
    if fid == "gamma":
        rep = gammalab.gamma_functional(args.x, args.tau_grid, cache=cache)
    elif fid == "d":
        rep = gammalab.verify_factorization_D(args.tau_grid, cache=cache)
    elif fid == "t1":
        rep = gammalab.verify_factorization_T1(args.tau_grid, cache=cache, strategy=args.strategy)
    elif fid == "t2":
        rep = gammalab.verify_factorization_T2(args.tau_grid, cache=cache, strategy=args.strategy)
    elif fid == "chain":
        rep = gammalab.verify_chain(args.tau, args.k, cache=cache, strategy=args.strategy)
    elif fid == "shifted":
        rep = gammalab.verify_shifted_ratio(args.tau, cache=cache, strategy=args.strategy)
    elif fid == "legendre":
        rep = gammalab.verify_legendre_factorization(args.tau, cache=cache, strategy=args.strategy)
    elif fid == "pi-gamma":
        val = gammalab.pi_via_gamma(args.tau, args.k, cache=cache)
        _emit(f"pi_surrogate={val:.17g}", args.out)
        return 0
    else:  # argparse choices guard this
        return 2
    _emit(rep.to_json(), args.out)
    return 0


def _cmd_scan(args) -> int:
    window = None
    if args.window_eps is not None:
        if not 0.0 < args.window_eps < 1.0:
            print("scan: --window-eps must be in (0, 1)", file=sys.stderr)
            return 2
        window = (1.0 - args.window_eps, 1.0 + args.window_eps)
    ids = [tok for tok in args.functionals.split(",") if tok.strip()]
    rep = fermat.scan(
        ids, n=args.n, max_xyz=args.max_xyz,
        tau_grid=args.tau_grid or fermat.DEFAULT_TAU_GRID,
        window=window, cache=_load_cache(), t_cap=args.t_cap,
        threads=args.threads,
    )
    _emit(rep.to_json(), args.out)
    return 0


def _cmd_cache(args) -> int:
    path = args.path or default_cache_path()
    if not path:
        print("cache: need --path or HL_CACHE", file=sys.stderr)
        return 2
    cache = CheckpointCache.load(path) if os.path.exists(path) else CheckpointCache()
    cache.extend_to(args.extend_to)
    cache.save(path)
    print(f"checkpoints={len(cache.ts)}")
    print(f"t_max={cache.ts[-1]:.17g}" if cache.ts else "t_max=0")
    return 0


def _build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="ladderlab",
                                description="second-moment ladder laboratory")
    sub = p.add_subparsers(dest="command", required=True)

    q = sub.add_parser("zeta", help="Z(t), Z(t)^2 and theta(t) at points")
    q.add_argument("--t", type=_floats, required=True, metavar="T1,T2,...")
    q.set_defaults(fn=_cmd_zeta)

    q = sub.add_parser("integral", help="second-moment integral over [from, to]")
    q.add_argument("--from", dest="frm", type=float, required=True)
    q.add_argument("--to", type=float, required=True)
    q.add_argument("--tol", type=float, default=None)
    q.set_defaults(fn=_cmd_integral)

    q = sub.add_parser("ladder", help="k ascents from T")
    q.add_argument("--T", type=float, required=True)
    q.add_argument("--k", type=int, required=True)
    q.add_argument("--tol", type=float, default=1e-6)
    q.set_defaults(fn=_cmd_ladder)

    q = sub.add_parser("gram", help="Gram points and Z values on [from, to]")
    q.add_argument("--from", dest="frm", type=float, required=True)
    q.add_argument("--to", type=float, required=True)
    q.add_argument("--out", default=None)
    q.set_defaults(fn=_cmd_gram)

    q = sub.add_parser("functional", help="evaluate a verification functional")
    q.add_argument("--id", required=True,
                   choices=("gamma", "d", "t1", "t2", "chain", "shifted", "legendre", "pi-gamma"))
    q.add_argument("--x", type=float, default=1.0)
    q.add_argument("--tau-grid", type=_floats, default=[1e2, 1e3, 1e4], metavar="T1,T2,...")
    q.add_argument("--tau", type=float, default=1e3)
    q.add_argument("--k", type=int, default=2)
    q.add_argument("--strategy", choices=STRATEGIES, default=DEFAULT_STRATEGY)
    q.add_argument("--out", default=None)
    q.set_defaults(fn=_cmd_functional)

    q = sub.add_parser("scan", help="forbidden-value scan over Fermat rationals")
    q.add_argument("--functionals", default="gamma", metavar="ID1,ID2,...")
    q.add_argument("--n", type=int, required=True)
    q.add_argument("--max-xyz", type=int, required=True)
    q.add_argument("--tau-grid", type=_floats, default=None, metavar="T1,T2,...")
    q.add_argument("--window-eps", type=float, default=None)
    q.add_argument("--t-cap", type=float, default=fermat.DEFAULT_T_CAP)
    q.add_argument("--threads", type=int, default=1)
    q.add_argument("--out", default=None)
    q.set_defaults(fn=_cmd_scan)

    q = sub.add_parser("cache", help="extend and save a checkpoint cache file")
    q.add_argument("--path", default=None)
    q.add_argument("--extend-to", type=float, required=True)
    q.set_defaults(fn=_cmd_cache)

    return p


def main(argv: list[str] | None = None) -> int:
    args = _build_parser().parse_args(argv)
    try:
        return args.fn(args)
    except LadderLabError as exc:
        print(f"ladderlab: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
