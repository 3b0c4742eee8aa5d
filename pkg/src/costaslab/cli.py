"""Command-line front end.

Exit codes: 0 success, 1 a verified statement was violated, 2 usage error,
3 refused by a resource guard (override with ``--force``).
"""
from __future__ import annotations

import argparse
import csv
import io
import json
import logging
import statistics
import sys
from dataclasses import dataclass
from pathlib import Path
from typing import Optional, Sequence

from . import experiments as ex
from .costas import (
    verify_costas_golomb,
    verify_costas_welch,
    verify_golomb_parity,
    verify_welch_parity,
)
from .ff import (
    PrimeField,
    euler_phi,
    factorize,
    field_of_size,
    is_prime,
    is_sophie_germain,
    primes_up_to,
)
from .xcorr import (
    complexity_ratio,
    g2_pair_count,
    verify_conjectures,
    verify_thm_gw,
    verify_w1_u_axis_theorem,
)

log = logging.getLogger("costaslab")

EXIT_OK, EXIT_VIOLATION, EXIT_USAGE, EXIT_GUARD = 0, 1, 2, 3
P_MAX_GUARD = 100_000
M_MAX_GUARD = 12
PAIR_GUARD = 10**7


class GuardRefusal(Exception):
    pass


@dataclass
class RunConfig:
    subcommand: str
    workers: int = 1
    out: Optional[Path] = None
    fmt: str = "csv"
    force: bool = False


# --------------------------------------------------------------------------
# output


def render(fields: Sequence[str], rows: Sequence[Sequence], fmt: str) -> str:
    if fmt == "json":
        recs = [dict(zip(fields, r)) for r in rows]
        return json.dumps(recs, indent=1) + "\n"
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(fields)
    w.writerows(["" if v is None else v for v in r] for r in rows)
    return buf.getvalue()


def emit(text: str, out: Optional[Path]) -> None:
    if out is None:
        sys.stdout.write(text)
    else:
        out.parent.mkdir(parents=True, exist_ok=True)
        out.write_text(text)
        log.info("wrote %s", out)


# --------------------------------------------------------------------------
# argument helpers


def int_list(text: str) -> list[int]:
    """'5,7,11' or '3..8' or a mix such as '3..5,8'."""
    out: list[int] = []
    for part in text.split(","):
        part = part.strip()
        if ".." in part:
            lo, hi = part.split("..")
            out.extend(range(int(lo), int(hi) + 1))
        elif part:
            out.append(int(part))
    if not out:
        raise argparse.ArgumentTypeError(f"empty list: {text!r}")
    return out


def positive(text: str) -> int:
    v = int(text)
    if v < 1:
        raise argparse.ArgumentTypeError("must be >= 1")
    return v


def _guard_p_max(cfg: RunConfig, p_max: int) -> None:
    if p_max > P_MAX_GUARD and not cfg.force:
        raise GuardRefusal(f"--p-max {p_max} exceeds {P_MAX_GUARD}; pass --force to run anyway")


# --------------------------------------------------------------------------
# subcommands


def cmd_diagonal(cfg: RunConfig, args) -> int:
    _guard_p_max(cfg, args.p_max)
    rows = ex.table1_scan(args.p_max, workers=cfg.workers, p_min=args.p_min)
    emit(render(["p", "max_s", "fit", "err"], [(r.p, r.max_s, r.fit_value, r.fit_error) for r in rows], cfg.fmt), cfg.out)
    exact, near, total = ex.logfit_stats(rows)
    log.info("1+round(ln p) fit: %d/%d exact (%.1f%%), %d within +-1 (%.1f%%)",
             exact, total, 100 * exact / total, near, 100 * near / total)
    return EXIT_OK


def cmd_ratio(cfg: RunConfig, args) -> int:
    _guard_p_max(cfg, args.p_max)
    rows = ex.ratio_scan(args.p_max, p_min=args.p_min, workers=cfg.workers)
    emit(render(["p", "zero_count", "total", "ratio"],
                [(r.p, r.zero_count, r.total, f"{r.ratio:.6f}") for r in rows], cfg.fmt), cfg.out)
    if rows:
        log.info("mean ratio over %d primes: %.4f (e^-1 = 0.3679)", len(rows), statistics.mean(r.ratio for r in rows))
    return EXIT_OK


def cmd_parity2(cfg: RunConfig, args) -> int:
    for m in args.m:
        if m < 3 or m > 16:
            raise argparse.ArgumentTypeError(f"m={m} outside [3, 16]")
        if m > M_MAX_GUARD and not cfg.force:
            raise GuardRefusal(f"m={m} exceeds {M_MAX_GUARD}; pass --force to run anyway")
    tables = [ex.table2_scan(m, m_max=16) for m in args.m]
    for t in tables:
        expected = euler_phi(2**t.m - 1) ** 2 // t.m
        log.info("m=%d: %d classes in the top half, %d distinct arrays (phi^2/m = %d)",
                 t.m, t.length, t.total, expected)
    if args.out_dir is not None:
        for t in tables:
            emit(render(["ee", "eo", "count"], [(r.ee, r.eo, r.count) for r in t.rows], cfg.fmt),
                 args.out_dir / f"table2_m{t.m}.{cfg.fmt}")
        emit(render(["m", "length", "total"], [(t.m, t.length, t.total) for t in tables], cfg.fmt),
             args.out_dir / f"table2_lengths.{cfg.fmt}")
    else:
        rows = [(r.m, r.ee, r.eo, r.count) for t in tables for r in t.rows]
        emit(render(["m", "ee", "eo", "count"], rows, cfg.fmt), cfg.out)
    return EXIT_OK


def cmd_germain(cfg: RunConfig, args) -> int:
    if args.primes is not None:
        primes = args.primes
        bad = [p for p in primes if not (is_prime(p) and is_sophie_germain(p))]
        if bad:
            raise argparse.ArgumentTypeError(f"not Sophie Germain primes: {bad}")
    else:
        _guard_p_max(cfg, args.p_max)
        primes = ex.germain_primes(args.p_max)
    if args.g2 and not cfg.force:
        for p in primes:
            pairs = g2_pair_count(p)
            if pairs > PAIR_GUARD:
                r = complexity_ratio(p)
                raise GuardRefusal(
                    f"G2 scan at p={p} touches {pairs} ordered pairs (> {PAIR_GUARD}); "
                    f"G2/W1 cost ratio {r.numerator}/{r.denominator} ~ {float(r):.1f}; pass --force")
    rows = ex.table3_rows(primes, include_g2=args.g2, workers=cfg.workers)
    emit(render(["p", "w1_max", "g2_max"], [(r.p, r.w1_max, r.g2_max) for r in rows], cfg.fmt), cfg.out)
    if rows:
        exact, near, total = ex.germain_logfit_check(rows)
        log.info("W1 column vs 1+round(ln p): %d/%d exact, %d within +-1", exact, total, near)
    return EXIT_OK


def _prime_range(args, lo: int) -> list[int]:
    return [p for p in primes_up_to(args.p_max) if p >= max(lo, args.p_min)]


def _verdicts(kind: str, cfg: RunConfig, args) -> list:
    if kind == "costas":
        out = [verify_costas_welch(p) for p in _prime_range(args, 2)]
        qs = [q for q in range(4, args.q_max + 1) if len(factorize(q)) == 1]
        out += [verify_costas_golomb(field_of_size(q)) for q in qs]
        return out
    if kind == "parity":
        out = [verify_golomb_parity(PrimeField(p)) for p in _prime_range(args, 5)]
        out += [verify_golomb_parity(field_of_size(q)) for q in args.prime_powers]
        out += [verify_welch_parity(p) for p in _prime_range(args, 5)]
        return out
    if kind == "u-axis":
        return ex.parallel_map(verify_w1_u_axis_theorem, _prime_range(args, 7), cfg.workers)
    if kind == "gw":
        return ex.parallel_map(verify_thm_gw, _prime_range(args, 7), cfg.workers)
    if kind == "conjectures":
        reports = ex.parallel_map(verify_conjectures, _prime_range(args, 7), cfg.workers)
        return [v for r in reports for v in r]
    raise argparse.ArgumentTypeError(f"unknown verification suite {kind!r}")


def cmd_verify(cfg: RunConfig, args) -> int:
    _guard_p_max(cfg, args.p_max)
    verdicts = _verdicts(args.suite, cfg, args)
    rows = [(v.name, v.p, v.status, v.lhs, v.rhs, v.detail) for v in verdicts]
    emit(render(["check", "p", "status", "lhs", "rhs", "detail"], rows, cfg.fmt), cfg.out)
    bad = [v for v in verdicts if v.violated]
    for v in bad:
        log.error("VIOLATED %s at p=%d: lhs=%s rhs=%s witness=%s %s", v.name, v.p, v.lhs, v.rhs, v.witness, v.detail)
    held = sum(v.holds for v in verdicts)
    skipped = sum(v.status == "skipped" for v in verdicts)
    log.info("%s: %d hold, %d violated, %d skipped", args.suite, held, len(bad), skipped)
    return EXIT_VIOLATION if bad else EXIT_OK


def cmd_estimate(cfg: RunConfig, args) -> int:
    p = args.p
    if not is_prime(p) or p < 5:
        raise argparse.ArgumentTypeError(f"estimate needs a prime p >= 5, got {p}")
    r = complexity_ratio(p)
    sys.stdout.write(f"{r.numerator}/{r.denominator} ≈ {float(r):.1f}\n")
    log.info("G2 ordered pairs at p=%d: %d (guard %d)", p, g2_pair_count(p), PAIR_GUARD)
    return EXIT_OK


# --------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--workers", type=positive, default=1, help="worker processes")
    common.add_argument("--out", type=Path, help="output file (default: stdout)")
    common.add_argument("--format", dest="fmt", choices=("csv", "json"), default="csv")
    common.add_argument("--force", action="store_true", help="override resource guards")
    common.add_argument("-v", "--verbose", action="store_true")

    parser = argparse.ArgumentParser(prog="costaslab", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="subcommand", required=True)

    p = sub.add_parser("diagonal", parents=[common], help="max diagonal dots of W1 arrays per prime")
    p.add_argument("--p-max", type=int, required=True)
    p.add_argument("--p-min", type=int, default=2)
    p.set_defaults(func=cmd_diagonal)

    p = sub.add_parser("ratio", parents=[common], help="fraction of fixed-point-free W1 arrays per prime")
    p.add_argument("--p-max", type=int, required=True)
    p.add_argument("--p-min", type=int, default=3)
    p.set_defaults(func=cmd_ratio)

    p = sub.add_parser("parity2", parents=[common], help="parity classes of G2 arrays over GF(2^m)")
    p.add_argument("--m", type=int_list, required=True, help="degrees, e.g. 5 or 3..8")
    p.add_argument("--out-dir", type=Path, help="write table2_m{M} files and table2_lengths here")
    p.set_defaults(func=cmd_parity2)

    p = sub.add_parser("germain", parents=[common], help="max cross-correlation in Germain-prime fields")
    grp = p.add_mutually_exclusive_group(required=True)
    grp.add_argument("--primes", type=int_list)
    grp.add_argument("--p-max", type=int)
    p.add_argument("--g2", action="store_true", help="also scan Golomb pairs")
    p.set_defaults(func=cmd_germain)

    p = sub.add_parser("verify", parents=[common], help="theorem and property suites over a prime range")
    p.add_argument("suite", choices=("costas", "parity", "u-axis", "gw", "conjectures"))
    p.add_argument("--p-max", type=int, required=True)
    p.add_argument("--p-min", type=int, default=2)
    p.add_argument("--q-max", type=int, default=256, help="largest field for the G2 Costas suite")
    p.add_argument("--prime-powers", type=int_list, default=[9, 25, 27, 49],
                   help="odd prime-power fields for the G2 parity suite")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("estimate", parents=[common], help="G2/W1 scan cost ratio at a prime")
    p.add_argument("p", type=int)
    p.set_defaults(func=cmd_estimate)
    return parser


def run(cfg: RunConfig, args) -> int:
    try:
        return args.func(cfg, args)
    except GuardRefusal as e:
        log.error("refused: %s", e)
        return EXIT_GUARD
    except (argparse.ArgumentTypeError, ValueError) as e:
        log.error("usage: %s", e)
        return EXIT_USAGE


def _configure_logging(verbose: bool) -> None:
    # package logger only, bound to the current stderr on every call
    handler = logging.StreamHandler(sys.stderr)
    handler.setFormatter(logging.Formatter("%(levelname)s %(message)s"))
    log.handlers[:] = [handler]
    log.setLevel(logging.DEBUG if verbose else logging.INFO)
    log.propagate = False


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return int(e.code or 0)
    _configure_logging(args.verbose)
    cfg = RunConfig(args.subcommand, args.workers, args.out, args.fmt, args.force)
    return run(cfg, args)


if __name__ == "__main__":
    sys.exit(main())
