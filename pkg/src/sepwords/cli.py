"""Command-line entry point.

Exit status: 0 on success, 1 on usage or input errors, 2 when ``verify``
finds a failing check.
"""

from __future__ import annotations

import argparse
import json
import logging
import sys
import time
from dataclasses import dataclass
from pathlib import Path
from typing import Optional, Sequence

from . import __version__
from .automata import HornerParams, Mode, build_horner, horner_end_state, run
from .exhaustive import K_LIMIT, N_LIMIT, N_MAX, Unresolved, sep_distance, sep_number
from .hornersep import HORNER_N_LIMIT, horner_distance, horner_sep_number
from .numtheory import cyclotomic
from .tables import (
    FORMATS,
    DistanceTable,
    TableRow,
    cached_row,
    default_cache_dir,
    emit_table,
)
from .verify import DEFAULT_SEED, SUITES, run_suites
from .wordpoly import parse_binary_string, string_to_poly

log = logging.getLogger("sepwords")

EXIT_OK, EXIT_USAGE, EXIT_VERIFY = 0, 1, 2


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message: str):  # argparse exits with 2 by default
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


@dataclass
class RunConfig:
    command: str
    fmt: str = "text"
    cache_dir: Optional[Path] = None
    workers: int = 1
    time_budget: Optional[float] = None
    k_cap: int = K_LIMIT
    n_cap: Optional[int] = None

    def __post_init__(self) -> None:
        if self.workers < 1:
            raise UsageError("--workers must be >= 1")
        if self.k_cap < 1 or (self.n_cap is not None and self.n_cap < 1):
            raise UsageError("caps must be >= 1")
        if self.k_cap > K_LIMIT:
            raise UsageError(f"--k-cap may not exceed {K_LIMIT}")


def _common() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(add_help=False)
    p.add_argument("--format", dest="fmt", choices=FORMATS, default="text")
    p.add_argument("--cache-dir", type=Path, default=None,
                   help="result cache (default: $SEPWORDS_CACHE_DIR or ~/.cache/sepwords)")
    p.add_argument("--no-cache", action="store_true")
    p.add_argument("--workers", type=int, default=1)
    p.add_argument("--time-budget", type=float, default=None, metavar="SECONDS")
    p.add_argument("--k-cap", type=int, default=K_LIMIT)
    p.add_argument("--n-cap", type=int, default=None)
    p.add_argument("-v", "--verbose", action="store_true")
    return p


def build_parser() -> argparse.ArgumentParser:
    common = _common()
    parser = _Parser(prog="sepwords", description=__doc__.splitlines()[0])
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("poly", parents=[common], help="associated polynomial of a string")
    p.add_argument("string")

    p = sub.add_parser("horner", parents=[common], help="end state of a Horner automaton")
    p.add_argument("--base", type=int, required=True)
    p.add_argument("--mod", type=int, required=True)
    p.add_argument("--start", type=int, default=0)
    p.add_argument("string")

    p = sub.add_parser("distance", parents=[common], help="separation distance of a pair")
    p.add_argument("--mode", choices=["horner"] + [m.value for m in Mode], default="horner")
    p.add_argument("s")
    p.add_argument("t")

    p = sub.add_parser("table", parents=[common], help="separation numbers for a range of n")
    p.add_argument("--mode", action="append", choices=["horner", "exists", "forall"],
                   help="may be repeated")
    p.add_argument("--min-n", type=int, default=1)
    p.add_argument("--max-n", type=int, required=True)
    p.add_argument("--output", "-o", type=Path, default=None,
                   help="write here instead of stdout; with several modes the mode is appended")
    p.add_argument("--force", action="store_true", help="recompute even if cached")

    p = sub.add_parser("cyclotomic", parents=[common], help="n-th cyclotomic polynomial")
    p.add_argument("n", type=int)

    p = sub.add_parser("verify", parents=[common], help="run the bundled self-checks")
    p.add_argument("--suite", action="append", choices=sorted(SUITES))
    p.add_argument("--seed", type=int, default=DEFAULT_SEED)
    return parser


def _out(text: str) -> None:
    sys.stdout.write(text if text.endswith("\n") else text + "\n")


def _dump(obj) -> None:
    _out(json.dumps(obj))


def cmd_poly(args, cfg: RunConfig) -> int:
    s = parse_binary_string(args.string)
    poly = string_to_poly(s)
    if cfg.fmt == "json":
        _dump({"string": str(s), "poly": str(poly), "coeffs": list(poly.coeffs)})
    else:
        _out(str(poly))
    return EXIT_OK


def cmd_horner(args, cfg: RunConfig) -> int:
    try:
        p = HornerParams(args.base, args.mod)
    except ValueError as exc:
        raise UsageError(str(exc)) from exc
    s = parse_binary_string(args.string)
    end = horner_end_state(p, args.start, s)
    assert end == run(build_horner(p), args.start, s.bits)
    if cfg.fmt == "json":
        _dump({"b": p.b, "m": p.m, "start": args.start, "string": str(s), "end_state": end})
    else:
        _out(str(end))
    return EXIT_OK


def cmd_distance(args, cfg: RunConfig) -> int:
    s, t = parse_binary_string(args.s), parse_binary_string(args.t)
    if args.mode == "horner":
        w = horner_distance(s, t)
        obj = {"s": str(s), "t": str(t), "mode": "horner", "m": w.m, "b": w.b,
               "residue_s": w.residue_s, "residue_t": w.residue_t}
        text = f"m={w.m} b={w.b} (end states {w.residue_s} != {w.residue_t} from start 0)"
    else:
        res = sep_distance(s, t, args.mode, k_cap=cfg.k_cap)
        obj = {"s": str(s), "t": str(t), "mode": args.mode, "k": res.k,
               "witness": None if res.witness is None else res.witness.to_json()}
        if res.resolved:
            text = f"k={res.k} witness={json.dumps(res.witness.to_json())}"
        else:
            text = f"unresolved at k-cap {cfg.k_cap}"
    if cfg.fmt == "json":
        _dump(obj)
    elif cfg.fmt == "csv":
        _out("s,t,mode,value\n" + f"{s},{t},{args.mode},{obj.get('m', obj.get('k'))}")
    else:
        _out(text)
    return EXIT_OK


def _compute_row(mode: str, n: int, cfg: RunConfig, deadline: Optional[float]) -> TableRow:
    remaining = None if deadline is None else deadline - time.monotonic()
    if remaining is not None and remaining <= 0:
        return TableRow(n=n, value=None)
    if mode == "horner":
        started = time.monotonic()
        res = horner_sep_number(n, limit=cfg.n_cap or HORNER_N_LIMIT)
        return TableRow(
            n=n,
            value=res.value,
            witness=(str(res.witness_pair[0]), str(res.witness_pair[1])),
            runtime_ms=int(round((time.monotonic() - started) * 1000)),
            base=res.witness.b,
        )
    try:
        res = sep_number(n, mode, limit=cfg.n_cap or N_LIMIT, workers=cfg.workers,
                         time_budget=remaining, k_cap=cfg.k_cap)
    except Unresolved as exc:
        log.warning("%s n=%d unresolved: %s", mode, n, exc)
        return TableRow(n=n, value=None)
    return TableRow(
        n=n,
        value=res.value,
        witness=(str(res.witness_pair[0]), str(res.witness_pair[1])),
        k_counts=tuple(res.k_counts),
        runtime_ms=res.runtime_ms,
    )


def build_table(mode: str, lo: int, hi: int, cfg: RunConfig, force: bool = False) -> DistanceTable:
    deadline = None if cfg.time_budget is None else time.monotonic() + cfg.time_budget
    table = DistanceTable(mode)
    for n in range(lo, hi + 1):
        row = cached_row(cfg.cache_dir, mode, n, lambda: _compute_row(mode, n, cfg, deadline), force)
        log.info("%s n=%d value=%s (%d ms)", mode, n, row.value, row.runtime_ms)
        table.add(row)
    return table


def cmd_table(args, cfg: RunConfig) -> int:
    modes = args.mode or ["exists"]
    if args.min_n < 1 or args.max_n < args.min_n:
        raise UsageError("need 1 <= --min-n <= --max-n")
    for mode in modes:
        cap = cfg.n_cap or (HORNER_N_LIMIT if mode == "horner" else N_LIMIT)
        if mode != "horner":
            cap = min(cap, N_MAX)
        if args.max_n > cap:
            raise UsageError(f"--max-n {args.max_n} exceeds the n-cap {cap} for mode {mode}")
    for mode in dict.fromkeys(modes):
        data = emit_table(build_table(mode, args.min_n, args.max_n, cfg, args.force), cfg.fmt)
        if args.output is None:
            sys.stdout.buffer.write(data)
            sys.stdout.flush()
        else:
            path = args.output
            if len(set(modes)) > 1:
                path = path.with_name(f"{path.stem}.{mode}{path.suffix}")
            path.write_bytes(data)
    return EXIT_OK


def cmd_cyclotomic(args, cfg: RunConfig) -> int:
    if args.n < 1:
        raise UsageError("n must be >= 1")
    poly = cyclotomic(args.n)
    if cfg.fmt == "json":
        _dump({"n": args.n, "degree": poly.degree, "poly": str(poly), "coeffs": list(poly.coeffs)})
    else:
        _out(str(poly))
    return EXIT_OK


def cmd_verify(args, cfg: RunConfig) -> int:
    checks = run_suites(args.suite, seed=args.seed)
    failed = [c for c in checks if not c.ok]
    if cfg.fmt == "json":
        _dump([{"suite": c.suite, "check": c.name, "ok": c.ok, "detail": c.detail} for c in checks])
    else:
        for c in checks:
            status = "PASS" if c.ok else "FAIL"
            _out(f"{status} [{c.suite}] {c.name}" + (f" ({c.detail})" if not c.ok and c.detail else ""))
        _out(f"{len(checks) - len(failed)}/{len(checks)} checks passed")
    return EXIT_VERIFY if failed else EXIT_OK


COMMANDS = {
    "poly": cmd_poly,
    "horner": cmd_horner,
    "distance": cmd_distance,
    "table": cmd_table,
    "cyclotomic": cmd_cyclotomic,
    "verify": cmd_verify,
}


def cmd_dispatch(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(levelname)s %(name)s: %(message)s")
    try:
        cfg = RunConfig(
            command=args.command,
            fmt=args.fmt,
            cache_dir=None if args.no_cache else (args.cache_dir or default_cache_dir()),
            workers=args.workers,
            time_budget=args.time_budget,
            k_cap=args.k_cap,
            n_cap=args.n_cap,
        )
        return COMMANDS[args.command](args, cfg)
    except (UsageError, ValueError) as exc:
        print(f"sepwords: error: {exc}", file=sys.stderr)
        return EXIT_USAGE


def main() -> None:
    sys.exit(cmd_dispatch())


if __name__ == "__main__":
    main()
