"""Primes, Euler's totient and cyclotomic polynomials."""

from __future__ import annotations

from functools import lru_cache
from typing import Optional

from .wordpoly import IntPoly, poly_divmod

__all__ = [
    "is_prime",
    "primes_up_to",
    "smallest_prime_in_range",
    "factorize",
    "divisors",
    "totient",
    "cyclotomic",
    "CYCLOTOMIC_CACHE_SIZE",
]

CYCLOTOMIC_CACHE_SIZE = 10_000

# Deterministic Miller-Rabin witnesses for n < 3.3 * 10^24.
_MR_BASES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41)


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    for p in _MR_BASES:
        if n % p == 0:
            return n == p
    d, r = n - 1, 0
    while d % 2 == 0:
        d //= 2
        r += 1
    for a in _MR_BASES:
        x = pow(a, d, n)
        if x in (1, n - 1):
            continue
        for _ in range(r - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


def primes_up_to(limit: int) -> list[int]:
    """All primes ``<= limit`` by the sieve of Eratosthenes."""
    if limit < 2:
        return []
    sieve = bytearray([1]) * (limit + 1)
    sieve[0] = sieve[1] = 0
    for i in range(2, int(limit**0.5) + 1):
        if sieve[i]:
            sieve[i * i :: i] = bytes(len(range(i * i, limit + 1, i)))
    return [i for i, flag in enumerate(sieve) if flag]


def smallest_prime_in_range(lo: int, hi: int) -> Optional[int]:
    """Smallest prime ``p`` with ``lo < p < hi`` (open interval), or None."""
    if lo < 1:
        raise ValueError(f"lo must be >= 1, got {lo}")
    for p in range(lo + 1, hi):
        if is_prime(p):
            return p
    return None


def factorize(n: int) -> dict[int, int]:
    """Prime factorization by trial division, as ``{prime: exponent}``."""
    if n < 1:
        raise ValueError(f"cannot factor {n}")
    out: dict[int, int] = {}
    p = 2
    while p * p <= n:
        while n % p == 0:
            out[p] = out.get(p, 0) + 1
            n //= p
        p += 1 if p == 2 else 2
    if n > 1:
        out[n] = out.get(n, 0) + 1
    return out


def divisors(n: int) -> list[int]:
    divs = [1]
    for p, e in factorize(n).items():
        divs = [d * p**k for d in divs for k in range(e + 1)]
    return sorted(divs)


def totient(n: int) -> int:
    if n < 1:
        raise ValueError(f"totient undefined for {n}")
    result = n
    for p in factorize(n):
        result -= result // p
    return result


@lru_cache(maxsize=CYCLOTOMIC_CACHE_SIZE)
def cyclotomic(n: int) -> IntPoly:
    """The n-th cyclotomic polynomial.

    Obtained by dividing ``x^n - 1`` by every ``Phi_d`` with ``d | n, d < n``;
    each divisor is monic, so every step is an exact integer division.
    """
    if n < 1:
        raise ValueError(f"cyclotomic polynomial undefined for n={n}")
    poly = IntPoly.monomial(n) - IntPoly((1,))
    for d in divisors(n)[:-1]:
        poly, rem = poly_divmod(poly, cyclotomic(d))
        assert rem.is_zero(), (n, d)
    return poly
