"""Minimum-DFA separation distances by exhaustive search.

Every search here ranges over one representative per isomorphism class of
``k``-state binary transition tables.  All four separation criteria are
invariant under renaming states, so nothing is lost.

Tables are handled as ``uint8`` arrays of shape ``(B, 2k)`` laid out
``t00, t01, t10, t11, ...``; the lexicographic order of that layout is the
canonical order.  The end-state vector of a string (end state from every
start state) is packed into a single integer code ``sum_q u_q * k**q``, so a
criterion between two vectors becomes a lookup in a ``k**k x k**k`` table.
"""

from __future__ import annotations

import itertools
import logging
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Iterator, NamedTuple, Optional, Sequence

import numpy as np

from .automata import Dfa, Mode
from .wordpoly import BinaryString

log = logging.getLogger(__name__)

__all__ = [
    "K_LIMIT",
    "N_LIMIT",
    "BudgetExceeded",
    "Unresolved",
    "PairSet",
    "Separation",
    "SepNumberResult",
    "canonical_tables",
    "enumerate_dfas",
    "end_codes",
    "sep_distance",
    "sep_number",
]

K_LIMIT = 5
N_LIMIT = 12
# hard ceiling for sep_number regardless of configuration
N_MAX = 18

# Upper bound on the number of booleans materialised per filtering step.
_PAIR_BUDGET = 1 << 24
_CODE_BATCH = 256


class Unresolved(RuntimeError):
    """A search ended without a value (state cap or time budget reached)."""


class BudgetExceeded(Unresolved):
    """Raised when a search runs past its deadline."""


def _check_deadline(deadline: Optional[float]) -> None:
    if deadline is not None and time.monotonic() > deadline:
        raise BudgetExceeded("time budget exceeded")


# -- canonical enumeration ---------------------------------------------------


def _raw_tables(k: int, lo: int, hi: int) -> np.ndarray:
    """Raw tables with lexicographic ranks ``lo..hi-1`` (rank = base-k code)."""
    idx = np.arange(lo, hi, dtype=np.int64)
    out = np.empty((len(idx), 2 * k), dtype=np.uint8)
    for col in range(2 * k - 1, -1, -1):
        idx, digit = np.divmod(idx, k)
        out[:, col] = digit
    return out


@lru_cache(maxsize=None)
def canonical_tables(k: int, limit: int = K_LIMIT) -> np.ndarray:
    """One table per isomorphism class, each the lexicographically smallest
    of its class, in ascending order.  Result is read-only."""
    if not 1 <= k <= limit:
        raise ValueError(f"k must be in [1, {limit}], got {k}")
    width = 2 * k
    total = k**width
    perms = [p for p in itertools.permutations(range(k)) if list(p) != list(range(k))]
    # place value of column (q, a) once state q is renamed perm[q]
    weights = []
    for p in perms:
        w = np.empty(width, dtype=np.int64)
        for q in range(k):
            for a in range(2):
                w[2 * q + a] = k ** (width - 1 - (2 * p[q] + a))
        weights.append((np.array(p, dtype=np.uint8), w))

    kept = []
    chunk = 1 << 20
    for lo in range(0, total, chunk):
        hi = min(lo + chunk, total)
        tables = _raw_tables(k, lo, hi)
        rank = np.arange(lo, hi, dtype=np.int64)
        for perm, w in weights:
            relabeled = perm[tables].astype(np.int64) @ w
            keep = rank <= relabeled
            tables, rank = tables[keep], rank[keep]
            if not len(rank):
                break
        kept.append(tables)
    result = np.concatenate(kept) if kept else np.empty((0, width), np.uint8)
    result.setflags(write=False)
    return result


def enumerate_dfas(k: int, limit: int = K_LIMIT) -> Iterator[Dfa]:
    """Yield one canonical DFA per isomorphism class of ``k``-state tables."""
    for row in canonical_tables(k, limit):
        yield Dfa.from_flat(row.tolist())


# -- end-state vectors ---------------------------------------------------------


def end_vectors(tables: np.ndarray, k: int, n: int) -> np.ndarray:
    """End-state vectors of every length-``n`` string under every table.

    Returns ``(B, 2**n, k)`` uint8; string index is the binary value with
    ``s_0`` most significant.  Built level by level: the children ``2p`` and
    ``2p + 1`` of prefix ``p`` each cost one lookup per coordinate.
    """
    b = len(tables)
    t0 = np.ascontiguousarray(tables[:, 0::2])
    t1 = np.ascontiguousarray(tables[:, 1::2])
    cur = np.broadcast_to(np.arange(k, dtype=np.uint8), (b, 1, k))
    for _ in range(n):
        flat = cur.reshape(b, -1).astype(np.intp)
        c0 = np.take_along_axis(t0, flat, axis=1)
        c1 = np.take_along_axis(t1, flat, axis=1)
        cur = np.stack(
            (c0.reshape(b, -1, k), c1.reshape(b, -1, k)), axis=2
        ).reshape(b, -1, k)
    return cur


def _code_weights(k: int) -> np.ndarray:
    return k ** np.arange(k, dtype=np.int32)


def end_codes(tables: np.ndarray, k: int, n: int) -> np.ndarray:
    """Packed end-state vectors, ``(B, 2**n)`` int32."""
    return end_vectors(tables, k, n).astype(np.int32) @ _code_weights(k)


def word_vectors(tables: np.ndarray, k: int, word: Sequence[int]) -> np.ndarray:
    """End-state vectors of a single word under every table, ``(B, k)``."""
    t = (np.ascontiguousarray(tables[:, 0::2]), np.ascontiguousarray(tables[:, 1::2]))
    vec = np.broadcast_to(np.arange(k, dtype=np.intp), (len(tables), k))
    for a in word:
        vec = np.take_along_axis(t[a], vec, axis=1).astype(np.intp)
    return vec


@lru_cache(maxsize=None)
def _mode_lut(mode: Mode, k: int) -> np.ndarray:
    """``lut[c, d]`` is True iff packed vectors ``c`` and ``d`` are separated."""
    codes = np.arange(k**k)
    vecs = (codes[:, None] // _code_weights(k)[None, :]) % k
    if mode is Mode.EXISTS:
        lut = codes[:, None] != codes[None, :]
    elif mode is Mode.FORALL:
        lut = np.ones((len(codes), len(codes)), dtype=bool)
        for q in range(k):
            lut &= vecs[:, None, q] != vecs[None, :, q]
    else:
        masks = np.bitwise_or.reduce(1 << vecs, axis=1)
        if mode is Mode.FORALL2:
            lut = (masks[:, None] & masks[None, :]) == 0
        else:
            const = (masks & (masks - 1)) == 0
            lut = ~(const[:, None] & const[None, :] & (masks[:, None] == masks[None, :]))
    lut.setflags(write=False)
    return lut


def _separated_rows(mode: Mode, u: np.ndarray, v: np.ndarray) -> np.ndarray:
    """Row-wise criterion on ``(B, k)`` vector arrays."""
    if mode is Mode.EXISTS:
        return (u != v).any(axis=1)
    if mode is Mode.FORALL:
        return (u != v).all(axis=1)
    mu = np.bitwise_or.reduce(np.left_shift(1, u), axis=1)
    mv = np.bitwise_or.reduce(np.left_shift(1, v), axis=1)
    if mode is Mode.FORALL2:
        return (mu & mv) == 0
    single = ((mu & (mu - 1)) == 0) & ((mv & (mv - 1)) == 0)
    return ~(single & (mu == mv))


# -- single pair ---------------------------------------------------------------


class Separation(NamedTuple):
    """Result of :func:`sep_distance`; ``k is None`` means unresolved at the cap."""

    k: Optional[int]
    witness: Optional[Dfa]

    @property
    def resolved(self) -> bool:
        return self.k is not None


def sep_distance(
    s: BinaryString,
    t: BinaryString,
    mode: Mode | str,
    k_cap: int = K_LIMIT,
) -> Separation:
    """Fewest states of a DFA separating ``s`` and ``t`` under ``mode``.

    Searches ``k = 1, 2, ...`` up to ``k_cap`` and returns the first canonical
    witness.  ``exists`` and ``forall`` need equal lengths; the squared modes
    accept any lengths (``forall2`` may then be unattainable).
    """
    mode = Mode(mode)
    if len(s) == 0 or len(t) == 0:
        raise ValueError("strings must be nonempty")
    if s == t:
        raise ValueError("strings must be distinct")
    if mode in (Mode.EXISTS, Mode.FORALL) and len(s) != len(t):
        raise ValueError(f"{mode} distance needs equal lengths")
    if not 1 <= k_cap <= K_LIMIT:
        raise ValueError(f"k_cap must be in [1, {K_LIMIT}], got {k_cap}")
    for k in range(1, k_cap + 1):
        tables = canonical_tables(k)
        for lo in range(0, len(tables), 4096):
            batch = tables[lo : lo + 4096]
            hit = _separated_rows(
                mode, word_vectors(batch, k, s.bits), word_vectors(batch, k, t.bits)
            )
            if hit.any():
                return Separation(k, Dfa.from_flat(batch[int(np.argmax(hit))].tolist()))
    return Separation(None, None)


# -- pair sets -----------------------------------------------------------------


class PairSet:
    """Unordered pairs ``i < j`` of string indices, kept in lexicographic order.

    Stored as two parallel index arrays; removal compacts them, so the
    surviving order (and hence the smallest surviving pair) is stable.
    """

    def __init__(self, n_strings: int, first: np.ndarray | None = None, second: np.ndarray | None = None):
        self.n_strings = n_strings
        if first is None:
            first, second = np.triu_indices(n_strings, k=1)
        self.first = np.asarray(first, dtype=np.int32)
        self.second = np.asarray(second, dtype=np.int32)

    @classmethod
    def block(cls, n_strings: int, i_lo: int, i_hi: int) -> PairSet:
        """All pairs whose smaller element lies in ``[i_lo, i_hi)``."""
        firsts, seconds = [], []
        for i in range(i_lo, i_hi):
            js = np.arange(i + 1, n_strings, dtype=np.int32)
            firsts.append(np.full(len(js), i, dtype=np.int32))
            seconds.append(js)
        if not firsts:
            return cls(n_strings, np.empty(0, np.int32), np.empty(0, np.int32))
        return cls(n_strings, np.concatenate(firsts), np.concatenate(seconds))

    def __len__(self) -> int:
        return len(self.first)

    def __iter__(self) -> Iterator[tuple[int, int]]:
        return zip(self.first.tolist(), self.second.tolist())

    def __contains__(self, pair: tuple[int, int]) -> bool:
        i, j = sorted(pair)
        return bool(((self.first == i) & (self.second == j)).any())

    def remove(self, mask: np.ndarray) -> None:
        """Drop the pairs where ``mask`` is True."""
        keep = ~mask
        self.first = self.first[keep]
        self.second = self.second[keep]

    def smallest(self) -> Optional[tuple[int, int]]:
        if not len(self):
            return None
        return int(self.first[0]), int(self.second[0])

    def copy(self) -> PairSet:
        return PairSet(self.n_strings, self.first.copy(), self.second.copy())


# -- separation numbers ----------------------------------------------------------


@dataclass
class SepNumberResult:
    n: int
    mode: Mode
    value: int
    witness_pair: tuple[BinaryString, BinaryString]
    k_counts: list[int] = field(default_factory=list)
    runtime_ms: int = 0


def _pair_filter_round(
    pairs: PairSet,
    tables: np.ndarray,
    k: int,
    n: int,
    mode: Mode,
    deadline: Optional[float],
) -> int:
    """Remove every pair some table separates; returns the number of tables used.

    Stops as soon as the set empties.
    """
    lut = _mode_lut(mode, k)
    used = 0
    for lo in range(0, len(tables), _CODE_BATCH):
        codes = end_codes(tables[lo : lo + _CODE_BATCH], k, n)
        pos = 0
        while pos < len(codes):
            _check_deadline(deadline)
            if not len(pairs):
                return used
            step = max(1, _PAIR_BUDGET // len(pairs))
            sub = codes[pos : pos + step]
            sep = lut[sub[:, pairs.first], sub[:, pairs.second]]
            hit = np.logical_or.accumulate(sep, axis=0)
            done = hit.all(axis=1)
            if done.any():
                used += int(np.argmax(done)) + 1
                pairs.remove(hit[-1])
                return used
            used += len(sub)
            pairs.remove(hit[-1])
            pos += len(sub)
    return used


def _refine_round(
    labels: np.ndarray,
    tables: np.ndarray,
    k: int,
    n: int,
    deadline: Optional[float],
) -> tuple[np.ndarray, int]:
    """Partition refinement for ``exists``: strings stay in one class while no
    table has told them apart.  Returns new labels and tables used."""
    n_strings = len(labels)
    radix = np.int64(k**k)
    used = 0
    for lo in range(0, len(tables), _CODE_BATCH):
        _check_deadline(deadline)
        codes = end_codes(tables[lo : lo + _CODE_BATCH], k, n).astype(np.int64)
        for row in codes:
            used += 1
            _, labels = np.unique(labels * radix + row, return_inverse=True)
            if labels.max() + 1 == n_strings:
                return labels, used
    return labels, used


def _smallest_same_class_pair(labels: np.ndarray) -> Optional[tuple[int, int]]:
    order = np.argsort(labels, kind="stable")
    sl = labels[order]
    dup = sl[1:] == sl[:-1]
    if not dup.any():
        return None
    # earliest string sharing a class with a later one; within a class the
    # stable sort keeps indices ascending
    starts = np.flatnonzero(np.r_[True, sl[1:] != sl[:-1]])
    best = None
    for st in starts:
        if st + 1 < len(sl) and sl[st + 1] == sl[st]:
            cand = (int(order[st]), int(order[st + 1]))
            if best is None or cand < best:
                best = cand
    return best


def _worker_pairs(args):
    first, second, n_strings, tables, k, n, mode = args
    pairs = PairSet(n_strings, first, second)
    lut = _mode_lut(mode, k)
    removed = np.zeros(len(pairs), dtype=bool)
    for lo in range(0, len(tables), _CODE_BATCH):
        codes = end_codes(tables[lo : lo + _CODE_BATCH], k, n)
        for row in codes:
            removed |= lut[row[pairs.first], row[pairs.second]]
    return removed


def _worker_refine(args):
    labels, tables, k, n = args
    return _refine_round(labels, tables, k, n, None)[0]


def _split(tables: np.ndarray, parts: int) -> list[np.ndarray]:
    return [c for c in np.array_split(tables, parts) if len(c)]


def _pair_blocks(n_strings: int, max_pairs: int) -> Iterator[PairSet]:
    """Split all pairs into blocks of consecutive first indices."""
    lo = 0
    while lo < n_strings - 1:
        hi, size = lo, 0
        while hi < n_strings - 1 and (size == 0 or size + n_strings - 1 - hi <= max_pairs):
            size += n_strings - 1 - hi
            hi += 1
        yield PairSet(n_strings) if (lo, hi) == (0, n_strings - 1) else PairSet.block(n_strings, lo, hi)
        lo = hi


def _filter_block(
    pairs: PairSet,
    n: int,
    mode: Mode,
    k_cap: int,
    deadline: Optional[float],
    pool: Optional[ProcessPoolExecutor],
    workers: int,
) -> tuple[int, tuple[int, int], list[int]]:
    """Run rounds ``k = 1, 2, ...`` on one block until it empties."""
    counts: list[int] = []
    n_strings = pairs.n_strings
    for k in range(1, k_cap + 1):
        witness = pairs.smallest()
        tables = canonical_tables(k)
        if pool is None:
            used = _pair_filter_round(pairs, tables, k, n, mode, deadline)
        else:
            jobs = [
                (pairs.first, pairs.second, n_strings, c, k, n, mode)
                for c in _split(tables, workers)
            ]
            removed = np.zeros(len(pairs), dtype=bool)
            for part in pool.map(_worker_pairs, jobs):
                removed |= part
            _check_deadline(deadline)
            pairs.remove(removed)
            used = len(tables)
        counts.append(used)
        log.debug("%s n=%d k=%d tables=%d left=%d", mode, n, k, used, len(pairs))
        if not len(pairs):
            assert witness is not None
            return k, witness, counts
    raise Unresolved(f"not resolved with k <= {k_cap}")


def sep_number(
    n: int,
    mode: Mode | str,
    limit: int = N_LIMIT,
    workers: int = 1,
    time_budget: Optional[float] = None,
    k_cap: int = K_LIMIT,
    max_block_pairs: int = 1 << 25,
) -> SepNumberResult:
    """Largest ``mode``-distance between two distinct strings of length ``n``.

    Pairs not yet separated are kept in a working set; rounds ``k = 1, 2, ...``
    sweep every canonical ``k``-state DFA over all ``2**n`` strings and drop
    the pairs it separates.  The round that empties the set gives the value;
    the witness is the smallest pair still present when that round began.

    Pairs are processed in blocks of at most ``max_block_pairs`` (split by
    first index) so memory stays bounded for larger ``n``; per-k counts are
    then the maximum over blocks.

    With ``workers > 1`` each round is split across processes (every table
    in the round is then processed, so ``k_counts`` can be larger than in a
    serial run; value and witness are identical).
    """
    mode = Mode(mode)
    if not 1 <= n <= min(limit, N_MAX):
        raise ValueError(f"n must be in [1, {min(limit, N_MAX)}], got {n}")
    if workers < 1:
        raise ValueError("workers must be >= 1")
    started = time.monotonic()
    deadline = started + time_budget if time_budget is not None else None
    n_strings = 1 << n
    counts: list[int] = []
    pool = ProcessPoolExecutor(workers) if workers > 1 else None
    try:
        if mode is Mode.EXISTS:
            labels = np.zeros(n_strings, dtype=np.int64)
            for k in range(1, k_cap + 1):
                witness = _smallest_same_class_pair(labels)
                tables = canonical_tables(k)
                if pool is None:
                    labels, used = _refine_round(labels, tables, k, n, deadline)
                else:
                    parts = list(
                        pool.map(_worker_refine, [(labels, c, k, n) for c in _split(tables, workers)])
                    )
                    _check_deadline(deadline)
                    _, labels = np.unique(np.stack(parts, axis=1), axis=0, return_inverse=True)
                    labels = labels.reshape(-1)
                    used = len(tables)
                counts.append(used)
                log.debug("exists n=%d k=%d tables=%d classes=%d", n, k, used, labels.max() + 1)
                if labels.max() + 1 == n_strings:
                    break
            else:
                raise Unresolved(f"not resolved with k <= {k_cap}")
        else:
            value = 0
            for pairs in _pair_blocks(n_strings, max_block_pairs):
                v, w, c = _filter_block(pairs, n, mode, k_cap, deadline, pool, workers)
                if v > value:
                    value, witness = v, w
                counts = [max(a, b) for a, b in itertools.zip_longest(counts, c, fillvalue=0)]
    finally:
        if pool is not None:
            pool.shutdown()
    assert witness is not None
    i, j = witness
    return SepNumberResult(
        n=n,
        mode=mode,
        value=len(counts),
        witness_pair=(BinaryString.from_int(i, n), BinaryString.from_int(j, n)),
        k_counts=counts,
        runtime_ms=int(round((time.monotonic() - started) * 1000)),
    )
