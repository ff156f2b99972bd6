"""Distance tables: rows of computed separation numbers, their text/CSV/JSON
renderings, and the per-(mode, n) result cache."""

from __future__ import annotations

import csv
import io
import json
import os
from dataclasses import dataclass, field
from pathlib import Path
from typing import Callable, Optional

from . import __version__

__all__ = [
    "TableRow",
    "DistanceTable",
    "FORMATS",
    "emit_table",
    "parse_table",
    "row_to_json",
    "row_from_json",
    "cache_path",
    "cached_row",
    "default_cache_dir",
]

FORMATS = ("text", "json", "csv")
CSV_HEADER = ["n", "value", "witness_s", "witness_t", "runtime_ms"]
UNRESOLVED = "unresolved"
CACHE_ENV = "SEPWORDS_CACHE_DIR"

_LABELS = {
    "horner": "D_H(n)",
    "exists": "D_exists(n)",
    "forall": "D_forall(n)",
    "exists2": "D_exists2(n)",
    "forall2": "D_forall2(n)",
}


@dataclass(frozen=True)
class TableRow:
    n: int
    value: Optional[int]
    witness: Optional[tuple[str, str]] = None
    k_counts: tuple[int, ...] = ()
    runtime_ms: int = 0
    # base of the witnessing Horner automaton (horner tables only)
    base: Optional[int] = None

    @property
    def resolved(self) -> bool:
        return self.value is not None


@dataclass
class DistanceTable:
    mode: str
    rows: list[TableRow] = field(default_factory=list)

    def __post_init__(self) -> None:
        if self.mode not in _LABELS:
            raise ValueError(f"unknown mode {self.mode!r}")
        self.rows = sorted(self.rows, key=lambda r: r.n)
        ns = [r.n for r in self.rows]
        if len(set(ns)) != len(ns):
            raise ValueError(f"duplicate n in table: {ns}")

    def add(self, row: TableRow) -> None:
        self.rows = sorted([r for r in self.rows if r.n != row.n] + [row], key=lambda r: r.n)

    def values(self) -> list[Optional[int]]:
        return [r.value for r in self.rows]


def row_to_json(mode: str, row: TableRow) -> dict:
    if mode == "horner":
        return {
            "n": row.n,
            "D_H": row.value,
            "witness": None
            if row.witness is None
            else {"s": row.witness[0], "t": row.witness[1], "m": row.value, "b": row.base},
            "runtime_ms": row.runtime_ms,
        }
    return {
        "mode": mode,
        "n": row.n,
        "value": row.value,
        "witness": None if row.witness is None else list(row.witness),
        "k_enumeration_counts": list(row.k_counts),
        "runtime_ms": row.runtime_ms,
        "toolkit_version": __version__,
    }


def row_from_json(obj: dict) -> tuple[str, TableRow]:
    if "D_H" in obj:
        w = obj.get("witness")
        return "horner", TableRow(
            n=obj["n"],
            value=obj["D_H"],
            witness=None if w is None else (w["s"], w["t"]),
            runtime_ms=obj.get("runtime_ms", 0),
            base=None if w is None else w["b"],
        )
    w = obj.get("witness")
    return obj["mode"], TableRow(
        n=obj["n"],
        value=obj["value"],
        witness=None if w is None else (w[0], w[1]),
        k_counts=tuple(obj.get("k_enumeration_counts", ())),
        runtime_ms=obj.get("runtime_ms", 0),
    )


def _emit_text(table: DistanceTable) -> str:
    label = _LABELS[table.mode]
    cells_n = [str(r.n) for r in table.rows]
    cells_v = ["?" if r.value is None else str(r.value) for r in table.rows]
    widths = [max(len(a), len(b)) for a, b in zip(cells_n, cells_v)]
    head = max(len(label), 1)
    lines = [
        "n".ljust(head) + " | " + " ".join(c.rjust(w) for c, w in zip(cells_n, widths)),
        label.ljust(head) + " | " + " ".join(c.rjust(w) for c, w in zip(cells_v, widths)),
    ]
    unresolved = [r.n for r in table.rows if r.value is None]
    if unresolved:
        lines.append(f"unresolved: n = {', '.join(map(str, unresolved))}")
    return "\n".join(lines) + "\n"


def _emit_csv(table: DistanceTable) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(CSV_HEADER)
    for r in table.rows:
        s, t = r.witness if r.witness is not None else ("", "")
        writer.writerow([r.n, UNRESOLVED if r.value is None else r.value, s, t, r.runtime_ms])
    return buf.getvalue()


def emit_table(table: DistanceTable, fmt: Optional[str] = None) -> bytes:
    """Render ``table``; an empty or missing format means text."""
    if not table.rows:
        raise ValueError("cannot emit an empty table")
    fmt = fmt or "text"
    if fmt == "text":
        out = _emit_text(table)
    elif fmt == "csv":
        out = _emit_csv(table)
    elif fmt == "json":
        out = json.dumps([row_to_json(table.mode, r) for r in table.rows], indent=2) + "\n"
    else:
        raise ValueError(f"unknown format {fmt!r}; expected one of {FORMATS}")
    return out.encode()


def parse_table(data: bytes | str, fmt: str, mode: Optional[str] = None) -> DistanceTable:
    """Inverse of :func:`emit_table` for ``csv`` and ``json``.

    CSV carries neither the mode nor the per-k enumeration counts, so the mode
    must be supplied and the counts come back empty.
    """
    text = data.decode() if isinstance(data, bytes) else data
    if fmt == "json":
        rows = []
        modes = set()
        for obj in json.loads(text):
            m, row = row_from_json(obj)
            modes.add(m)
            rows.append(row)
        if len(modes) != 1:
            raise ValueError(f"mixed modes in table: {sorted(modes)}")
        found = modes.pop()
        if mode is not None and mode != found:
            raise ValueError(f"table mode {found!r} does not match {mode!r}")
        return DistanceTable(found, rows)
    if fmt == "csv":
        if mode is None:
            raise ValueError("mode is required to parse a CSV table")
        reader = csv.reader(io.StringIO(text))
        header = next(reader)
        if header != CSV_HEADER:
            raise ValueError(f"unexpected CSV header {header}")
        rows = []
        for n, value, s, t, ms in reader:
            rows.append(
                TableRow(
                    n=int(n),
                    value=None if value == UNRESOLVED else int(value),
                    witness=(s, t) if s or t else None,
                    runtime_ms=int(ms),
                )
            )
        return DistanceTable(mode, rows)
    raise ValueError(f"cannot parse format {fmt!r}")


# -- cache ---------------------------------------------------------------------


def default_cache_dir() -> Path:
    env = os.environ.get(CACHE_ENV)
    if env:
        return Path(env)
    return Path(os.environ.get("XDG_CACHE_HOME", Path.home() / ".cache")) / "sepwords"


def cache_path(cache_dir: Path, mode: str, n: int) -> Path:
    return Path(cache_dir) / f"{mode}_n{n}.json"


def cached_row(
    cache_dir: Optional[Path],
    mode: str,
    n: int,
    compute: Callable[[], TableRow],
    force: bool = False,
) -> TableRow:
    """Return the cached row for ``(mode, n)`` or compute and store it.

    Unresolved rows are never cached.
    """
    if cache_dir is None:
        return compute()
    path = cache_path(cache_dir, mode, n)
    if path.exists() and not force:
        cached_mode, row = row_from_json(json.loads(path.read_text()))
        if cached_mode == mode and row.n == n:
            return row
    row = compute()
    if row.resolved:
        path.parent.mkdir(parents=True, exist_ok=True)
        tmp = path.with_suffix(".tmp")
        tmp.write_text(json.dumps(row_to_json(mode, row), indent=2) + "\n")
        tmp.replace(path)
    return row
