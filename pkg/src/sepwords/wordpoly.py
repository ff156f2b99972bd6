"""Binary strings, their associated integer polynomials, and polynomial arithmetic.

A binary string ``s = s_0 s_1 ... s_{n-1}`` is associated with the polynomial
``s(x) = sum_j s_j x^(n-1-j)``, i.e. the string read as base-``x`` digits with
the leftmost symbol most significant.

Polynomials are stored low-degree first: ``coeffs[j]`` is the coefficient of
``x^j``.  The zero polynomial has no coefficients and degree -1.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence

__all__ = [
    "BinaryString",
    "IntPoly",
    "parse_binary_string",
    "string_to_poly",
    "diff_poly",
    "eval_mod",
    "vanishes_mod",
    "poly_divmod",
    "divides",
    "x_pow_minus_x",
]

_SEPARATORS = frozenset(" _")


@dataclass(frozen=True)
class BinaryString:
    """An immutable sequence of bits; index 0 is the leftmost symbol."""

    bits: tuple[int, ...]

    def __post_init__(self) -> None:
        bits = tuple(self.bits)
        if any(b not in (0, 1) for b in bits):
            raise ValueError(f"bits must be 0 or 1, got {bits!r}")
        object.__setattr__(self, "bits", bits)

    @classmethod
    def from_int(cls, value: int, n: int) -> BinaryString:
        """The length-``n`` string whose binary value is ``value`` (s_0 is the MSB)."""
        if not 0 <= value < (1 << n):
            raise ValueError(f"{value} does not fit in {n} bits")
        return cls(tuple((value >> (n - 1 - j)) & 1 for j in range(n)))

    def __len__(self) -> int:
        return len(self.bits)

    def __iter__(self):
        return iter(self.bits)

    def __getitem__(self, j: int) -> int:
        return self.bits[j]

    def __str__(self) -> str:
        return "".join(map(str, self.bits))

    def to_int(self) -> int:
        value = 0
        for b in self.bits:
            value = (value << 1) | b
        return value

    def complement(self) -> BinaryString:
        return BinaryString(tuple(1 - b for b in self.bits))


def _normalize(coeffs: Iterable[int]) -> tuple[int, ...]:
    c = list(coeffs)
    while c and c[-1] == 0:
        c.pop()
    return tuple(c)


@dataclass(frozen=True)
class IntPoly:
    """Integer polynomial in canonical form (no trailing zero coefficients)."""

    coeffs: tuple[int, ...] = ()

    def __post_init__(self) -> None:
        object.__setattr__(self, "coeffs", _normalize(int(c) for c in self.coeffs))

    @classmethod
    def monomial(cls, power: int, coeff: int = 1) -> IntPoly:
        return cls((0,) * power + (coeff,))

    @classmethod
    def from_descending(cls, coeffs: Sequence[int]) -> IntPoly:
        """Build from coefficients listed highest power first."""
        return cls(tuple(reversed(coeffs)))

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def is_zero(self) -> bool:
        return not self.coeffs

    def coeff(self, j: int) -> int:
        return self.coeffs[j] if 0 <= j < len(self.coeffs) else 0

    @property
    def leading(self) -> int:
        return self.coeffs[-1] if self.coeffs else 0

    def __add__(self, other: IntPoly) -> IntPoly:
        n = max(len(self.coeffs), len(other.coeffs))
        return IntPoly(tuple(self.coeff(j) + other.coeff(j) for j in range(n)))

    def __neg__(self) -> IntPoly:
        return IntPoly(tuple(-c for c in self.coeffs))

    def __sub__(self, other: IntPoly) -> IntPoly:
        return self + (-other)

    def __mul__(self, other: IntPoly) -> IntPoly:
        if self.is_zero() or other.is_zero():
            return IntPoly()
        out = [0] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a:
                for j, b in enumerate(other.coeffs):
                    out[i + j] += a * b
        return IntPoly(tuple(out))

    def __str__(self) -> str:
        if self.is_zero():
            return "0"
        parts: list[str] = []
        for j in range(self.degree, -1, -1):
            c = self.coeffs[j]
            if c == 0:
                continue
            mag = abs(c)
            if j == 0:
                body = str(mag)
            else:
                var = "x" if j == 1 else f"x^{j}"
                body = var if mag == 1 else f"{mag}*{var}"
            if not parts:
                parts.append(body if c > 0 else f"-{body}")
            else:
                parts.append(("+ " if c > 0 else "- ") + body)
        return " ".join(parts)


def parse_binary_string(text: str) -> BinaryString:
    """Parse ``text`` of 0/1 digits, ignoring spaces and underscores.

    >>> str(parse_binary_string("0000 1010"))
    '00001010'
    """
    bits = []
    for ch in text:
        if ch in "01":
            bits.append(int(ch))
        elif ch not in _SEPARATORS:
            raise ValueError(f"invalid character {ch!r} in binary string {text!r}")
    if not bits:
        raise ValueError(f"no binary digits in {text!r}")
    return BinaryString(tuple(bits))


def string_to_poly(s: BinaryString) -> IntPoly:
    if len(s) < 1:
        raise ValueError("string must be nonempty")
    return IntPoly(tuple(reversed(s.bits)))


def diff_poly(s: BinaryString, t: BinaryString) -> IntPoly:
    """``s(x) - t(x)`` for two strings of the same length."""
    if len(s) != len(t):
        raise ValueError(f"length mismatch: {len(s)} != {len(t)}")
    if len(s) < 1:
        raise ValueError("strings must be nonempty")
    return IntPoly(tuple(a - b for a, b in zip(reversed(s.bits), reversed(t.bits))))


def eval_mod(p: IntPoly, b: int, m: int) -> int:
    """``p(b) mod m`` by Horner's rule, reducing every intermediate mod ``m``."""
    if m <= 0:
        raise ValueError(f"modulus must be positive, got {m}")
    b %= m
    acc = 0
    for c in reversed(p.coeffs):
        acc = (acc * b + c) % m
    return acc


def vanishes_mod(p: IntPoly, m: int) -> bool:
    """True iff ``p(x) = 0 (mod m)`` for every integer ``x``.

    ``p(x) mod m`` has period ``m`` in ``x``, so checking one full residue
    system is enough.
    """
    if m < 2:
        raise ValueError(f"modulus must be at least 2, got {m}")
    return all(eval_mod(p, b, m) == 0 for b in range(m))


def poly_divmod(p: IntPoly, d: IntPoly) -> tuple[IntPoly, IntPoly]:
    """Exact long division by a monic ``d``: returns ``(q, r)`` with ``p = d*q + r``."""
    if d.degree < 1 or d.leading != 1:
        raise ValueError(f"divisor must be monic of degree >= 1, got {d}")
    r = list(p.coeffs)
    dd = d.degree
    if len(r) <= dd:
        return IntPoly(), p
    q = [0] * (len(r) - dd)
    for shift in range(len(r) - 1 - dd, -1, -1):
        c = r[shift + dd]
        if c:
            q[shift] = c
            for j, dc in enumerate(d.coeffs):
                r[shift + j] -= c * dc
    return IntPoly(tuple(q)), IntPoly(tuple(r[:dd]))


def divides(d: IntPoly, p: IntPoly) -> bool:
    return poly_divmod(p, d)[1].is_zero()


def x_pow_minus_x(p: int) -> IntPoly:
    """The polynomial ``x^p - x``."""
    if p < 2:
        raise ValueError(f"exponent must be at least 2, got {p}")
    return IntPoly.monomial(p) - IntPoly.monomial(1)
