"""Binary-alphabet DFAs without start or accepting states.

A :class:`Dfa` is just a dense ``k x 2`` transition table over states
``0..k-1``.  Separation is judged on the vector of end states obtained by
starting from every state.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from typing import Iterable, Sequence

from .wordpoly import BinaryString, eval_mod, string_to_poly

__all__ = [
    "Dfa",
    "HornerParams",
    "Mode",
    "run",
    "end_state_vector",
    "separates",
    "separates_vectors",
    "build_horner",
    "horner_end_state",
]

Word = Sequence[int]


@dataclass(frozen=True)
class Dfa:
    k: int
    table: tuple[tuple[int, int], ...]

    def __post_init__(self) -> None:
        table = tuple((int(r[0]), int(r[1])) for r in self.table)
        if self.k < 1:
            raise ValueError(f"a DFA needs at least one state, got k={self.k}")
        if len(table) != self.k:
            raise ValueError(f"table has {len(table)} rows, expected {self.k}")
        for row in table:
            for q in row:
                if not 0 <= q < self.k:
                    raise ValueError(f"transition target {q} out of range for k={self.k}")
        object.__setattr__(self, "table", table)

    @classmethod
    def from_rows(cls, rows: Iterable[Sequence[int]]) -> Dfa:
        rows = [tuple(r) for r in rows]
        return cls(len(rows), tuple(rows))  # type: ignore[arg-type]

    @classmethod
    def from_flat(cls, flat: Sequence[int]) -> Dfa:
        """Inverse of :meth:`flat`: ``(t00, t01, t10, t11, ...)``."""
        return cls.from_rows(zip(flat[0::2], flat[1::2]))

    def flat(self) -> tuple[int, ...]:
        return tuple(q for row in self.table for q in row)

    def delta(self, q: int, a: int) -> int:
        return self.table[q][a]

    def relabel(self, perm: Sequence[int]) -> Dfa:
        """The isomorphic DFA in which state ``q`` is renamed ``perm[q]``."""
        rows: list[tuple[int, int]] = [(0, 0)] * self.k
        for q, (t0, t1) in enumerate(self.table):
            rows[perm[q]] = (perm[t0], perm[t1])
        return Dfa(self.k, tuple(rows))

    def swap_symbols(self) -> Dfa:
        return Dfa(self.k, tuple((t1, t0) for t0, t1 in self.table))

    def to_json(self) -> dict:
        return {"k": self.k, "table": [list(r) for r in self.table]}

    @classmethod
    def from_json(cls, obj: dict) -> Dfa:
        dfa = cls.from_rows(obj["table"])
        if dfa.k != obj["k"]:
            raise ValueError("k does not match table size")
        return dfa


@dataclass(frozen=True)
class HornerParams:
    b: int
    m: int

    def __post_init__(self) -> None:
        if self.m < 1 or not 0 <= self.b < self.m:
            raise ValueError(f"need 0 <= b < m, got b={self.b}, m={self.m}")


class Mode(str, enum.Enum):
    EXISTS = "exists"
    FORALL = "forall"
    EXISTS2 = "exists2"
    FORALL2 = "forall2"

    def __str__(self) -> str:
        return self.value


def run(dfa: Dfa, q: int, w: Word) -> int:
    if not 0 <= q < dfa.k:
        raise ValueError(f"state {q} out of range for k={dfa.k}")
    table = dfa.table
    for a in w:
        q = table[q][a]
    return q


def end_state_vector(dfa: Dfa, w: Word) -> tuple[int, ...]:
    """``(run(dfa, q, w) for q in 0..k-1)`` in a single pass over ``w``."""
    vec = list(range(dfa.k))
    table = dfa.table
    for a in w:
        vec = [table[q][a] for q in vec]
    return tuple(vec)


def separates_vectors(mode: Mode | str, u: Sequence[int], v: Sequence[int]) -> bool:
    """Apply a separation criterion to two end-state vectors."""
    mode = Mode(mode)
    if mode is Mode.EXISTS:
        return any(a != b for a, b in zip(u, v))
    if mode is Mode.FORALL:
        return all(a != b for a, b in zip(u, v))
    if mode is Mode.FORALL2:
        return set(u).isdisjoint(v)
    # exists2 fails only if both vectors are the same constant
    su, sv = set(u), set(v)
    return not (len(su) == 1 and su == sv)


def separates(mode: Mode | str, dfa: Dfa, x: Word, y: Word) -> bool:
    if len(x) == 0 or len(y) == 0:
        raise ValueError("separation is defined for nonempty strings only")
    return separates_vectors(mode, end_state_vector(dfa, x), end_state_vector(dfa, y))


def build_horner(p: HornerParams) -> Dfa:
    """The Horner automaton: ``delta(i, a) = (i*b + a) mod m``."""
    b, m = p.b, p.m
    return Dfa(m, tuple(((i * b) % m, (i * b + 1) % m) for i in range(m)))


def horner_end_state(p: HornerParams, i: int, s: BinaryString) -> int:
    """End state of the Horner automaton from start ``i``: ``(i*b^n + s(b)) mod m``."""
    if not 0 <= i < p.m:
        raise ValueError(f"start state {i} out of range for m={p.m}")
    if len(s) < 1:
        raise ValueError("string must be nonempty")
    return (i * pow(p.b, len(s), p.m) + eval_mod(string_to_poly(s), p.b, p.m)) % p.m
