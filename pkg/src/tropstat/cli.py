"""Command-line front end: every experiment behind one binary.

All sampling subcommands require an explicit --seed and write
deterministic bytes for a fixed (config, seed), independent of
--threads. CSV output is comma-separated with a header row and LF
endings; exact rationals appear as num/den strings.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import math
import os
import sys

import numpy as np

from . import experiments, partitions, tropical
from .atoms import parse_dist


def _parse_coeffs(text: str):
    try:
        return [float(tok) for tok in text.replace(",", " ").split()]
    except ValueError as exc:
        raise SystemExit(f"error: bad coefficient list: {exc}")


def parse_n_grid(spec: str) -> list[int]:
    """Parse 'a:b:steps' into a log-spaced strictly increasing int grid."""
    try:
        lo_s, hi_s, steps_s = spec.split(":")
        lo, hi, steps = float(lo_s), float(hi_s), int(steps_s)
    except ValueError:
        raise SystemExit(f"error: bad n-grid {spec!r}, expected a:b:steps")
    if not (0 < lo < hi) or steps < 2:
        raise SystemExit("error: n-grid needs 0 < a < b and steps >= 2")
    grid = [int(round(math.exp(v)))
            for v in np.linspace(math.log(lo), math.log(hi), steps)]
    if sorted(set(grid)) != grid:
        raise SystemExit("error: n-grid is not strictly increasing after rounding")
    return grid


def _threads_default() -> int:
    env = os.environ.get("TROPSTAT_THREADS", "")
    return int(env) if env else 1


def _fmt(v) -> str:
    if isinstance(v, float):
        return repr(v)
    return str(v)


def _comp_str(partition) -> str:
    return "+".join(str(p) for p in partition)


def _emit(args, header, rows):
    """Write rows as CSV (default) or JSON records."""
    fmt = getattr(args, "format", "csv")
    buf = io.StringIO()
    if fmt == "csv":
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(header)
        for row in rows:
            writer.writerow([_fmt(v) for v in row])
    else:
        records = [dict(zip(header, row)) for row in rows]
        buf.write(json.dumps(records, indent=2))
        buf.write("\n")
    _write_out(args, buf.getvalue())


def _write_out(args, text: str):
    out = getattr(args, "out", None)
    if out:
        with open(out, "w", newline="") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _cmd_zeros(args):
    if args.coeffs_file:
        with open(args.coeffs_file) as fh:
            coeffs = _parse_coeffs(fh.read())
    elif args.coeffs:
        coeffs = _parse_coeffs(args.coeffs)
    else:
        raise SystemExit("error: zeros needs --coeffs or --coeffs-file")
    poly = tropical.TropicalPolynomial(coefficients=tuple(coeffs))
    payload = [{"x": float(z.location), "mult": z.multiplicity}
               for z in tropical.zeros(poly)]
    _write_out(args, json.dumps(payload) + "\n")


def _cmd_sample_zn(args):
    dist = parse_dist(args.dist)
    grid = parse_n_grid(args.n_grid) if args.n_grid else [args.n]
    rows = []
    for n in grid:
        counts = experiments.sample_zn_counts(dist, n, args.trials, args.seed,
                                              args.threads)
        rows.extend((n, k, int(c)) for k, c in enumerate(counts))
    _emit(args, ("n", "trial", "count"), rows)


def _cmd_exact_pn(args):
    rows = [(_comp_str(comp), str(partitions.exact_pn(args.n, comp)))
            for comp in partitions.compositions(args.n)]
    _emit(args, ("composition", "probability"), rows)


def _cmd_exact_pkn(args):
    ks = [args.k] if args.k else range(1, args.n + 1)
    rows = [(args.n, k, str(partitions.exact_pkn(args.n, k))) for k in ks]
    _emit(args, ("n", "k", "probability"), rows)


def _cmd_crp(args):
    def one(rng):
        return partitions.crp_sample(args.n, rng)

    samples = experiments.farm_trials(f"crp:{args.n}", args.seed, args.trials,
                                      one, args.threads)
    rows = [(k, _comp_str(s)) for k, s in enumerate(samples)]
    _emit(args, ("trial", "composition"), rows)


def _cmd_sieve(args):
    def one(rng):
        return partitions.sieve_sample(args.n, rng, a=args.a)

    samples = experiments.farm_trials(f"sieve:{args.n}:{args.a:g}", args.seed,
                                      args.trials, one, args.threads)
    rows = [(k, _comp_str(s)) for k, s in enumerate(samples)]
    _emit(args, ("trial", "composition"), rows)


def _cmd_renewal(args):
    counts = experiments.renewal_trials(args.a, args.t, args.trials, args.seed,
                                        delay=args.delay, threads=args.threads)
    _emit(args, ("trial", "count"), list(enumerate(counts.tolist())))


def _cmd_ppp(args):
    dist = parse_dist(args.dist) if args.dist else None
    if args.kind != "homog" and dist is None:
        raise SystemExit(f"error: --kind {args.kind} needs --dist")
    if args.emit == "counts":
        counts = experiments.ppp_counts(args.kind, dist, args.n, args.trials,
                                        args.seed, side=args.side,
                                        threads=args.threads)
        _emit(args, ("trial", "count"), list(enumerate(counts.tolist())))
        return
    samples = experiments.ppp_points(args.kind, dist, args.n, args.trials,
                                     args.seed, threads=args.threads)
    rows = [(k, float(x), float(y))
            for k, s in enumerate(samples)
            for x, y in zip(s.x.tolist(), s.y.tolist())]
    _emit(args, ("trial", "x", "y"), rows)


def _cmd_couple_check(args):
    dist = parse_dist(args.dist)
    pairs = experiments.couple_diffs(dist, args.n, args.trials, args.seed,
                                     args.threads)
    rows = [(k, int(b), int(c)) for k, (b, c) in enumerate(pairs)]
    _emit(args, ("trial", "count_before", "count_after"), rows)


def _cmd_an_stat(args):
    dist = parse_dist(args.dist)
    areas = experiments.an_stats(dist, args.n, args.trials, args.seed,
                                 args.threads)
    _emit(args, ("trial", "area"), list(enumerate(areas.tolist())))


def _cmd_clt_report(args):
    dist = parse_dist(args.dist)
    a = args.a if args.a is not None else dist.tail_a
    report = experiments.clt_report(dist, a, parse_n_grid(args.n_grid),
                                    args.trials, args.seed, args.threads)
    _write_out(args, json.dumps(report, indent=2) + "\n")


def _add_output_flags(p, formats=("csv", "json")):
    p.add_argument("--format", choices=formats, default=formats[0])
    p.add_argument("--out", default=None, help="output path (default stdout)")


def _add_sampling_flags(p):
    p.add_argument("--trials", type=int, required=True)
    p.add_argument("--seed", type=int, required=True,
                   help="master seed (mandatory; no wall-clock default)")
    p.add_argument("--threads", type=int, default=_threads_default())


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="tropstat",
        description="Tropical polynomial zeros, partitions and hull statistics.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("zeros", help="zeros of a min-plus polynomial")
    p.add_argument("--coeffs", help="comma-separated coefficients C_0..C_n")
    p.add_argument("--coeffs-file", help="file with the coefficients")
    p.add_argument("--out", default=None)
    p.set_defaults(run=_cmd_zeros)

    p = sub.add_parser("sample-zn", help="zero counts of random polynomials")
    p.add_argument("--dist", required=True)
    p.add_argument("--n", type=int)
    p.add_argument("--n-grid", help="a:b:steps (log-spaced)")
    _add_sampling_flags(p)
    _add_output_flags(p)
    p.set_defaults(run=_cmd_sample_zn)

    p = sub.add_parser("exact-pn", help="exact composition law table")
    p.add_argument("--n", type=int, required=True)
    _add_output_flags(p)
    p.set_defaults(run=_cmd_exact_pn)

    p = sub.add_parser("exact-pkn", help="exact component-count law")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--k", type=int)
    _add_output_flags(p)
    p.set_defaults(run=_cmd_exact_pkn)

    p = sub.add_parser("crp", help="restaurant-process partition samples")
    p.add_argument("--n", type=int, required=True)
    _add_sampling_flags(p)
    _add_output_flags(p)
    p.set_defaults(run=_cmd_crp)

    p = sub.add_parser("sieve", help="stick-conditional partition samples")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--a", type=float, default=1.0)
    _add_sampling_flags(p)
    _add_output_flags(p)
    p.set_defaults(run=_cmd_sieve)

    p = sub.add_parser("renewal", help="renewal counts on [0, t]")
    p.add_argument("--a", type=float, required=True)
    p.add_argument("--t", type=float, required=True)
    p.add_argument("--delay", type=float, default=0.0)
    _add_sampling_flags(p)
    _add_output_flags(p)
    p.set_defaults(run=_cmd_renewal)

    p = sub.add_parser("ppp", help="point-process draws and hull counts")
    p.add_argument("--kind", choices=("homog", "inhomog", "discrete"),
                   required=True)
    p.add_argument("--dist")
    p.add_argument("--n", type=float, required=True)
    p.add_argument("--emit", choices=("counts", "points"), default="counts")
    p.add_argument("--side", choices=("full", "plus", "minus"), default="full")
    _add_sampling_flags(p)
    _add_output_flags(p)
    p.set_defaults(run=_cmd_ppp)

    p = sub.add_parser("couple-check", help="face counts before/after snapping")
    p.add_argument("--dist", required=True)
    p.add_argument("--n", type=int, required=True)
    _add_sampling_flags(p)
    _add_output_flags(p)
    p.set_defaults(run=_cmd_couple_check)

    p = sub.add_parser("an-stat", help="scaled triangle-area sums")
    p.add_argument("--dist", required=True)
    p.add_argument("--n", type=int, required=True)
    _add_sampling_flags(p)
    _add_output_flags(p)
    p.set_defaults(run=_cmd_an_stat)

    p = sub.add_parser("clt-report", help="full central-limit report (JSON)")
    p.add_argument("--dist", required=True)
    p.add_argument("--a", type=float, default=None,
                   help="tail exponent (default: from --dist)")
    p.add_argument("--n-grid", required=True)
    _add_sampling_flags(p)
    p.add_argument("--out", default=None)
    p.set_defaults(run=_cmd_clt_report)

    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    if getattr(args, "n_grid", None) is None and getattr(args, "command", "") == "sample-zn" \
            and args.n is None:
        raise SystemExit("error: sample-zn needs --n or --n-grid")
    try:
        args.run(args)
    except (ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    return 0


if __name__ == "__main__":
    sys.exit(main())
