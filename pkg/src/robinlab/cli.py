"""Command line front end.

Every subcommand writes machine-readable rows (CSV or JSON) to stdout or
--out, with human summaries on stderr. Floats are serialized at 17
significant digits and all computation orders are fixed, so output bytes do
not depend on --threads or on repetition. Exit code 0 means the run
completed (violations and failed conditions are data, not errors); exit
code 2 means a configuration or capacity problem.
"""

from __future__ import annotations

import argparse
import csv
import sys
from dataclasses import dataclass
from typing import Sequence

from .arithmetic import factorize, sigma_of, sigma_sieve
from .errors import CapacityError
from .euler_products import condition_sweep, zeta_enclosure
from .gap_series import (
    DEFAULT_CHECKPOINT_EVERY,
    series_scan,
    theta_inequality_check,
)
from .primes import DEFAULT_SEGMENT_ODDS, chebyshev_theta, primes_up_to, table_for_count
from .robin import extremal_candidates, robin_check, scan_range

PAPER45_LIMIT = 10_000_000
PAPER45_REFERENCE = 1.231

CSV_HEADERS = {
    "primes": ["n", "p_n"],
    "theta": ["x", "theta", "pi_x"],
    "robin-scan": ["n", "sigma", "sigma_ratio", "bound_ratio", "delta", "violates"],
    "robin-eval": ["n", "sigma", "sigma_ratio", "bound_ratio", "delta", "violates"],
    "robin-extremal": ["log_n", "exponents", "sigma_ratio", "bound_ratio", "delta", "violates", "special"],
    "condition7": ["m", "p_m", "k", "lhs_log", "rhs_log", "holds"],
    "zeta": ["k", "m", "p_m", "lo", "hi", "width"],
    "gap-series": ["n", "p_n", "gap", "term", "partial_sum", "running_sup"],
    "theta-check": ["p_n", "theta", "c_needed", "satisfied"],
}


@dataclass
class RunConfig:
    limit: int | None = None
    k: int | None = None
    c0: float | None = None
    format: str = "csv"
    threads: int = 1
    segment_size: int = DEFAULT_SEGMENT_ODDS
    checkpoint_every: int | None = None
    output_path: str | None = None

    def validate(self) -> None:
        if self.format not in ("csv", "json"):
            raise ValueError(f"format must be csv or json, got {self.format!r}")
        if self.threads < 1:
            raise ValueError(f"--threads must be >= 1, got {self.threads}")
        if self.segment_size < (1 << 16) or self.segment_size & (self.segment_size - 1):
            raise ValueError(f"--segment-size must be a power of two >= 65536, got {self.segment_size}")
        if self.checkpoint_every is not None and self.checkpoint_every < 1:
            raise ValueError(f"--checkpoint-every must be >= 1, got {self.checkpoint_every}")


def fmt_value(v: object) -> str:
    if isinstance(v, bool):
        return "true" if v else "false"
    if isinstance(v, float):
        return f"{v:.17g}"
    return str(v)


class RowSink:
    """Writes rows as CSV (with header) or as a JSON array of objects."""

    def __init__(self, stream, fmt: str, columns: Sequence[str]) -> None:
        self.stream = stream
        self.fmt = fmt
        self.columns = list(columns)
        self._json_rows: list[str] = []
        self._csv = None
        if fmt == "csv":
            self._csv = csv.writer(stream, lineterminator="\n")
            self._csv.writerow(self.columns)

    def write(self, values: Sequence[object]) -> None:
        if len(values) != len(self.columns):
            raise ValueError(f"row has {len(values)} fields, header has {len(self.columns)}")
        if self._csv is not None:
            self._csv.writerow([fmt_value(v) for v in values])
            return
        fields = []
        for name, v in zip(self.columns, values):
            if isinstance(v, str):
                body = '"' + v.replace("\\", "\\\\").replace('"', '\\"') + '"'
            else:
                body = fmt_value(v)
            fields.append(f'"{name}": {body}')
        self._json_rows.append("  {" + ", ".join(fields) + "}")

    def finish(self) -> None:
        if self._csv is None:
            if self._json_rows:
                self.stream.write("[\n" + ",\n".join(self._json_rows) + "\n]\n")
            else:
                self.stream.write("[]\n")


def _info(msg: str) -> None:
    print(f"# {msg}", file=sys.stderr)


def _run_with_sink(cfg: RunConfig, command: str, body) -> int:
    columns = CSV_HEADERS[command]
    if cfg.output_path and cfg.output_path != "-":
        with open(cfg.output_path, "w", newline="") as fh:
            sink = RowSink(fh, cfg.format, columns)
            body(sink)
            sink.finish()
    else:
        sink = RowSink(sys.stdout, cfg.format, columns)
        body(sink)
        sink.finish()
    return 0


def cmd_primes(cfg: RunConfig) -> int:
    if cfg.limit is None:
        raise ValueError("primes needs --limit")
    table = primes_up_to(cfg.limit, segment_size=cfg.segment_size)
    every = cfg.checkpoint_every or 1

    def body(sink: RowSink) -> None:
        count = table.count
        for i, p in enumerate(table.primes.tolist(), start=1):
            if i % every == 0 or i == count:
                sink.write([i, p])

    rc = _run_with_sink(cfg, "primes", body)
    _info(f"primes: limit={cfg.limit} count={table.count}")
    return rc


def cmd_theta(cfg: RunConfig) -> int:
    if cfg.limit is None:
        raise ValueError("theta needs --limit")
    table = primes_up_to(cfg.limit, segment_size=cfg.segment_size)
    rec = chebyshev_theta(cfg.limit, table)

    def body(sink: RowSink) -> None:
        sink.write([rec.x, rec.theta, rec.pi_x])

    rc = _run_with_sink(cfg, "theta", body)
    _info(f"theta: x={rec.x} theta={fmt_value(rec.theta)} pi_x={rec.pi_x}")
    return rc


def cmd_robin_scan(cfg: RunConfig, lo: int, hi: int, odd_only: bool) -> int:
    result = scan_range(lo, hi, odd_only=odd_only)

    def body(sink: RowSink) -> None:
        for row in result.violator_rows:
            sink.write([row.n, row.sigma, row.sigma_ratio, row.bound_ratio, row.delta, row.violates])
        for row in result.top_rows:
            sink.write([row.n, row.sigma, row.sigma_ratio, row.bound_ratio, row.delta, row.violates])

    rc = _run_with_sink(cfg, "robin-scan", body)
    _info(f"robin-scan: range=[{lo}, {hi}] odd_only={str(odd_only).lower()} "
          f"violators={len(result.violator_rows)} near_ties={len(result.near_ties)}")
    if result.violator_rows:
        _info(f"robin-scan: last violator n={result.violator_rows[-1].n}")
    return rc


def cmd_robin_eval(cfg: RunConfig, ns: Sequence[int]) -> int:
    rows = []
    for n in ns:
        f = factorize(n)
        ev = robin_check(f)
        rows.append([n, sigma_of(f), ev.sigma_ratio, ev.robin_rhs_ratio, ev.delta, ev.violates])

    def body(sink: RowSink) -> None:
        for row in rows:
            sink.write(row)

    return _run_with_sink(cfg, "robin-eval", body)


def cmd_robin_extremal(cfg: RunConfig, m_max: int, budget: int, exponent_cap: int | None) -> int:
    def body(sink: RowSink) -> None:
        for cand in extremal_candidates(m_max, budget, exponent_cap=exponent_cap):
            ev = robin_check(cand.factorization)
            exps = " ".join(str(e) for _, e in cand.factorization.factors)
            sink.write([ev.log_n, exps, ev.sigma_ratio, ev.robin_rhs_ratio, ev.delta,
                        ev.violates, ev.special])

    rc = _run_with_sink(cfg, "robin-extremal", body)
    _info(f"robin-extremal: m_max={m_max} budget={budget}")
    return rc


def cmd_condition7(cfg: RunConfig, m_max: int, k_list: Sequence[int]) -> int:
    every = cfg.checkpoint_every or 1
    holder: dict[str, object] = {}

    def body(sink: RowSink) -> None:
        def on_row(row) -> None:
            sink.write([row.m, row.p_m, row.k, row.lhs_log, row.rhs_log, row.holds])

        holder["summary"] = condition_sweep(m_max, k_list, checkpoint_every=every, on_row=on_row)

    rc = _run_with_sink(cfg, "condition7", body)
    summary = holder["summary"]
    for k in k_list:
        at = summary.first_hold[k]
        _info(f"condition7: k={k} first holds at m={at}" if at is not None
              else f"condition7: k={k} never holds for m <= {m_max}")
    _info(f"condition7: m_max={summary.m_max} p_max={summary.p_max} "
          f"deviation={fmt_value(summary.final_deviation)}")
    return rc


def cmd_zeta(cfg: RunConfig, k: int, m: int) -> int:
    table = table_for_count(m)
    box = zeta_enclosure(k, m, table=table)

    def body(sink: RowSink) -> None:
        sink.write([k, m, table.nth(m), box.lo, box.hi, box.width])

    rc = _run_with_sink(cfg, "zeta", body)
    _info(f"zeta: k={k} m={m} enclosure=[{fmt_value(box.lo)}, {fmt_value(box.hi)}]")
    return rc


def cmd_gap_series(cfg: RunConfig, limit: int | None, preset: str | None) -> int:
    if preset == "paper45":
        limit = PAPER45_LIMIT
    if limit is None:
        raise ValueError("gap-series needs --limit or --preset")
    every = cfg.checkpoint_every or DEFAULT_CHECKPOINT_EVERY
    table = primes_up_to(limit, segment_size=cfg.segment_size)

    holder: dict[str, object] = {}

    def body(sink: RowSink) -> None:
        def on_cp(cp) -> None:
            sink.write([cp.n, cp.p_n, cp.gap, cp.term, cp.partial_sum, cp.running_sup])

        holder["state"] = series_scan(limit, checkpoint_every=every, on_checkpoint=on_cp, table=table)

    rc = _run_with_sink(cfg, "gap-series", body)
    state = holder["state"]
    _info(f"gap-series: limit={limit} n={state.n} partial_sum={fmt_value(state.partial_sum)} "
          f"running_sup={fmt_value(state.running_sup)} sup_at={state.sup_at}")
    if preset == "paper45":
        diff = state.partial_sum - PAPER45_REFERENCE
        _info(f"gap-series: preset=paper45 reference={PAPER45_REFERENCE} "
              f"value={fmt_value(state.partial_sum)} difference={fmt_value(diff)}")
    return rc


def cmd_theta_check(cfg: RunConfig, limit: int, c0_source: str | None, c0: float | None) -> int:
    # --c0 implies an explicit source; naming both only works when they agree
    if c0_source is None:
        c0_source = "explicit" if c0 is not None else "series_sup"
    elif c0_source == "series_sup" and c0 is not None:
        raise ValueError("--c0-source series_sup conflicts with an explicit --c0")
    table = primes_up_to(limit, segment_size=cfg.segment_size)
    if c0_source == "series_sup":
        state = series_scan(limit, table=table)
        c0 = state.running_sup
        _info(f"theta-check: c0={fmt_value(c0)} from series running sup at {limit}")
    else:
        if c0 is None:
            raise ValueError("theta-check with --c0-source explicit needs --c0")
        _info(f"theta-check: c0={fmt_value(c0)} explicit")
    every = cfg.checkpoint_every or DEFAULT_CHECKPOINT_EVERY
    result = theta_inequality_check(limit, c0, checkpoint_every=every, table=table)

    def body(sink: RowSink) -> None:
        for rec in result.records:
            sink.write([rec.p_n, rec.theta, rec.c_needed, rec.satisfied])

    rc = _run_with_sink(cfg, "theta-check", body)
    _info(f"theta-check: limit={limit} checked={result.checked} "
          f"all_satisfied={str(result.all_satisfied).lower()} "
          f"max_c_needed={fmt_value(result.max_c_needed)} at p={result.max_c_needed_at}")
    if result.first_failure is not None:
        _info(f"theta-check: first failure at p={result.first_failure}")
    return rc


def _add_common(sub: argparse.ArgumentParser) -> None:
    sub.add_argument("--format", choices=["csv", "json"], default="csv")
    sub.add_argument("--threads", type=int, default=1,
                     help="accepted for interface compatibility; results never depend on it")
    sub.add_argument("--segment-size", type=int, default=DEFAULT_SEGMENT_ODDS,
                     help="odd entries per sieve segment, power of two >= 65536")
    sub.add_argument("--checkpoint-every", type=int, default=None)
    sub.add_argument("--out", default=None, help="output path, default stdout")


def _parse_k_list(text: str) -> list[int]:
    try:
        ks = [int(part) for part in text.split(",") if part.strip()]
    except ValueError as exc:
        raise argparse.ArgumentTypeError(f"bad k list {text!r}") from exc
    if not ks:
        raise argparse.ArgumentTypeError("k list is empty")
    return ks


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="robinlab",
                                     description="Divisor-sum bounds, Euler products, prime-gap series")
    commands = parser.add_subparsers(dest="command", required=True)

    p = commands.add_parser("primes", help="enumerate primes up to a limit")
    p.add_argument("--limit", type=int, required=True)
    _add_common(p)

    p = commands.add_parser("theta", help="log-weighted prime sum at a point")
    p.add_argument("--limit", type=int, required=True)
    _add_common(p)

    p = commands.add_parser("robin-scan", help="scan a range for divisor bound violations")
    p.add_argument("--lo", type=int, required=True)
    p.add_argument("--hi", type=int, required=True)
    p.add_argument("--odd-only", action="store_true")
    _add_common(p)

    p = commands.add_parser("robin-eval", help="evaluate the divisor bound at specific n")
    p.add_argument("n", type=int, nargs="+")
    _add_common(p)

    p = commands.add_parser("robin-extremal", help="walk extremal exponent-vector candidates")
    p.add_argument("--m-max", type=int, required=True)
    p.add_argument("--budget", type=int, required=True)
    p.add_argument("--exponent-cap", type=int, default=None)
    _add_common(p)

    p = commands.add_parser("condition7", help="sweep the finite product condition")
    p.add_argument("--m-max", type=int, required=True)
    p.add_argument("--k", type=_parse_k_list, required=True, help="comma separated, e.g. 1,2,5")
    _add_common(p)

    p = commands.add_parser("zeta", help="two-sided zeta enclosure from partial Euler products")
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--m", type=int, required=True)
    _add_common(p)

    p = commands.add_parser("gap-series", help="sum the prime-gap series with checkpoints")
    p.add_argument("--limit", type=int, default=None)
    p.add_argument("--preset", choices=["paper45"], default=None)
    _add_common(p)

    p = commands.add_parser("theta-check", help="pointwise theta inequality over primes")
    p.add_argument("--limit", type=int, required=True)
    p.add_argument("--c0", type=float, default=None)
    p.add_argument("--c0-source", choices=["series_sup", "explicit"], default=None)
    _add_common(p)

    return parser


def config_from(args: argparse.Namespace) -> RunConfig:
    cfg = RunConfig(
        limit=getattr(args, "limit", None),
        k=getattr(args, "k", None) if isinstance(getattr(args, "k", None), int) else None,
        c0=getattr(args, "c0", None),
        format=args.format,
        threads=args.threads,
        segment_size=args.segment_size,
        checkpoint_every=args.checkpoint_every,
        output_path=args.out,
    )
    cfg.validate()
    return cfg


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        cfg = config_from(args)
        if args.command == "primes":
            return cmd_primes(cfg)
        if args.command == "theta":
            return cmd_theta(cfg)
        if args.command == "robin-scan":
            return cmd_robin_scan(cfg, args.lo, args.hi, args.odd_only)
        if args.command == "robin-eval":
            return cmd_robin_eval(cfg, args.n)
        if args.command == "robin-extremal":
            return cmd_robin_extremal(cfg, args.m_max, args.budget, args.exponent_cap)
        if args.command == "condition7":
            return cmd_condition7(cfg, args.m_max, args.k)
        if args.command == "zeta":
            return cmd_zeta(cfg, args.k, args.m)
        if args.command == "gap-series":
            return cmd_gap_series(cfg, args.limit, args.preset)
        if args.command == "theta-check":
            return cmd_theta_check(cfg, args.limit, args.c0_source, args.c0)
        raise ValueError(f"unknown command {args.command!r}")
    except (ValueError, CapacityError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


def entrypoint() -> None:
    raise SystemExit(main())


if __name__ == "__main__":
    entrypoint()
