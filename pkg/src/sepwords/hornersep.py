"""Horner distance between strings and the Horner separation number.

Two strings of equal length are separated by the Horner automaton
``H(b, m)`` iff ``s(b) != t(b) (mod m)``, i.e. iff the difference polynomial
``s(x) - t(x)`` is nonzero at ``b`` modulo ``m``.  The distance of a pair is
therefore a function of its difference polynomial alone, which is what makes
enumerating ``{-1, 0, 1}^n`` (up to sign) sufficient for the maximum.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .automata import HornerParams
from .numtheory import is_prime
from .wordpoly import (
    BinaryString,
    IntPoly,
    diff_poly,
    divides,
    eval_mod,
    string_to_poly,
    x_pow_minus_x,
)

__all__ = [
    "HornerWitness",
    "HornerSepResult",
    "HORNER_N_LIMIT",
    "horner_separates",
    "poly_horner_distance",
    "horner_distance",
    "horner_sep_number",
    "pair_from_diff",
    "horner_bound",
]

HORNER_N_LIMIT = 14


@dataclass(frozen=True)
class HornerWitness:
    m: int
    b: int
    residue_s: int
    residue_t: int

    def __post_init__(self) -> None:
        if self.residue_s == self.residue_t:
            raise ValueError("witness residues must differ")

    @property
    def params(self) -> HornerParams:
        return HornerParams(self.b, self.m)


@dataclass(frozen=True)
class HornerSepResult:
    n: int
    value: int
    witness_pair: tuple[BinaryString, BinaryString]
    witness: HornerWitness


def horner_separates(p: HornerParams, s: BinaryString, t: BinaryString) -> bool:
    if len(s) != len(t):
        raise ValueError(f"length mismatch: {len(s)} != {len(t)}")
    if len(s) < 1:
        raise ValueError("strings must be nonempty")
    return eval_mod(string_to_poly(s), p.b, p.m) != eval_mod(string_to_poly(t), p.b, p.m)


def _vanishes_fast(d: IntPoly, m: int, prime_threshold: float) -> bool:
    # For a prime m above the threshold, d vanishes mod m iff x^m - x divides
    # it, which costs one long division instead of m evaluations.
    if m >= prime_threshold and is_prime(m):
        return divides(x_pow_minus_x(m), d)
    return all(eval_mod(d, b, m) == 0 for b in range(m))


def poly_horner_distance(d: IntPoly, n: int) -> tuple[int, int]:
    """Smallest ``(m, b)`` with ``d(b) != 0 (mod m)``, for nonzero ``d`` of degree < n."""
    if d.is_zero():
        raise ValueError("the zero polynomial is never separated")
    threshold = 1 + math.sqrt(max(n - 1, 0))
    m = 2
    while True:
        if not _vanishes_fast(d, m, threshold):
            for b in range(m):
                if eval_mod(d, b, m):
                    return m, b
        m += 1


def horner_distance(s: BinaryString, t: BinaryString) -> HornerWitness:
    """Smallest modulus (then smallest base) of a Horner automaton separating ``s``, ``t``."""
    d = diff_poly(s, t)
    if d.is_zero():
        raise ValueError("strings must be distinct")
    m, b = poly_horner_distance(d, len(s))
    return HornerWitness(
        m=m,
        b=b,
        residue_s=eval_mod(string_to_poly(s), b, m),
        residue_t=eval_mod(string_to_poly(t), b, m),
    )


def pair_from_diff(coeffs_msb_first) -> tuple[BinaryString, BinaryString]:
    """The pair with ``s_j = max(c_j, 0)``, ``t_j = max(-c_j, 0)``."""
    s = BinaryString(tuple(max(int(c), 0) for c in coeffs_msb_first))
    t = BinaryString(tuple(max(-int(c), 0) for c in coeffs_msb_first))
    return s, t


def _sign_classes(n: int, lo: int, hi: int) -> np.ndarray:
    """Rows ``lo..hi-1`` of ``{-1,0,1}^n`` in lexicographic order (-1 < 0 < 1),
    keeping only nonzero rows whose first nonzero entry is +1.

    Column 0 is the coefficient of the highest power, aligned with string
    position 0.
    """
    idx = np.arange(lo, hi, dtype=np.int64)
    rows = np.empty((len(idx), n), dtype=np.int8)
    for j in range(n - 1, -1, -1):
        idx, digit = np.divmod(idx, 3)
        rows[:, j] = digit - 1
    nz = rows != 0
    first = np.argmax(nz, axis=1)
    lead = rows[np.arange(len(rows)), first]
    return rows[nz.any(axis=1) & (lead == 1)]


def _chunk_distances(polys: np.ndarray) -> np.ndarray:
    """Horner distance of every row of ``polys``, evaluated one ``(b, m)`` at a time."""
    n = polys.shape[1]
    exps = np.arange(n - 1, -1, -1)
    dist = np.zeros(len(polys), dtype=np.int64)
    alive = np.arange(len(polys))
    m = 1
    while len(alive):
        m += 1
        sub = polys[alive].astype(np.int64)
        separated = np.zeros(len(alive), dtype=bool)
        for b in range(m):
            powers = np.array([pow(b, int(e), m) for e in exps], dtype=np.int64)
            separated |= (sub @ powers) % m != 0
        dist[alive[separated]] = m
        alive = alive[~separated]
    return dist


def horner_sep_number(
    n: int, limit: int = HORNER_N_LIMIT, chunk: int = 1 << 20
) -> HornerSepResult:
    """Maximum Horner distance over all pairs of distinct length-``n`` strings.

    Runs over difference polynomials in ``{-1,0,1}^n`` up to sign, in
    lexicographic order and in bounded-size chunks.  Ties are broken towards
    the lexicographically smallest coefficient vector.
    """
    if not 1 <= n <= limit:
        raise ValueError(f"n must be in [1, {limit}], got {n}")
    best_m, best_poly = 0, None
    for lo in range(0, 3**n, chunk):
        polys = _sign_classes(n, lo, min(lo + chunk, 3**n))
        if not len(polys):
            continue
        dist = _chunk_distances(polys)
        i = int(np.argmax(dist))
        if dist[i] > best_m:
            best_m, best_poly = int(dist[i]), polys[i]
    s, t = pair_from_diff(best_poly)
    wit = horner_distance(s, t)
    assert wit.m == best_m
    return HornerSepResult(n=n, value=best_m, witness_pair=(s, t), witness=wit)


def horner_bound(n: int) -> int:
    """Smallest prime ``>= n`` (an upper bound on every Horner distance at length n)."""
    p = max(n, 2)
    while not is_prime(p):
        p += 1
    return p
