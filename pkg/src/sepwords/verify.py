"""Self-checks bundled with the toolkit (``sepwords verify``).

Each suite is a function taking a seeded :class:`random.Random` and yielding
``Check`` records.  The checks are deliberately smaller than the pytest
versions so that a full ``verify`` finishes in well under a minute.
"""

from __future__ import annotations

import itertools
import math
import random
from dataclasses import dataclass
from typing import Callable, Iterator

from . import golden
from .automata import (
    Dfa,
    HornerParams,
    Mode,
    build_horner,
    end_state_vector,
    horner_end_state,
    run,
    separates,
)
from .exhaustive import canonical_tables, sep_distance, sep_number
from .hornersep import horner_bound, horner_distance, horner_sep_number
from .numtheory import (
    cyclotomic,
    divisors,
    is_prime,
    primes_up_to,
    smallest_prime_in_range,
    totient,
)
from .wordpoly import (
    BinaryString,
    IntPoly,
    diff_poly,
    divides,
    poly_divmod,
    string_to_poly,
    vanishes_mod,
    x_pow_minus_x,
)

DEFAULT_SEED = 20231016
# min of totient(n) * ln(ln(n)) / n over 6 <= n <= 10^4, reached at n = 6
TOTIENT_LOGLOG_MIN = math.log(math.log(6)) / 3


@dataclass(frozen=True)
class Check:
    suite: str
    name: str
    ok: bool
    detail: str = ""


def _rand_string(rng: random.Random, n: int) -> BinaryString:
    return BinaryString(tuple(rng.randint(0, 1) for _ in range(n)))


def _rand_pair(rng: random.Random, n: int) -> tuple[BinaryString, BinaryString]:
    s = _rand_string(rng, n)
    while True:
        t = _rand_string(rng, n)
        if t != s:
            return s, t


def _rand_dfa(rng: random.Random, k: int) -> Dfa:
    return Dfa.from_rows([(rng.randrange(k), rng.randrange(k)) for _ in range(k)])


def burnside_class_count(k: int) -> int:
    """Number of ``k``-state binary tables up to state renaming (Burnside)."""
    total = 0
    for perm in itertools.permutations(range(k)):
        seen, cycles = set(), []
        for q in range(k):
            if q not in seen:
                length, x = 0, q
                while x not in seen:
                    seen.add(x)
                    x = perm[x]
                    length += 1
                cycles.append(length)
        fixed = 1
        for length in cycles:
            # an entry in a cycle of this length must land in a cycle whose length divides it
            choices = sum(c for c in cycles if length % c == 0)
            fixed *= choices**2
        total += fixed
    return total // math.factorial(k)


def suite_wordpoly(rng: random.Random) -> Iterator[Check]:
    name = "wordpoly"
    bad = 0
    for _ in range(200):
        n = rng.randint(1, 40)
        coeffs = [rng.choice((-1, 0, 1)) for _ in range(n)]
        if not any(coeffs):
            continue
        s = BinaryString(tuple(max(c, 0) for c in coeffs))
        t = BinaryString(tuple(max(-c, 0) for c in coeffs))
        bad += diff_poly(s, t) != IntPoly.from_descending(coeffs)
    yield Check(name, "difference decomposition", bad == 0, f"{bad} mismatches")

    bad = 0
    for _ in range(200):
        p = IntPoly(tuple(rng.randint(-50, 50) for _ in range(rng.randint(0, 30))))
        d = IntPoly(tuple(rng.randint(-9, 9) for _ in range(rng.randint(1, 8))) + (1,))
        q, r = poly_divmod(p, d)
        bad += (d * q + r != p) or r.degree >= d.degree
    yield Check(name, "division exactness", bad == 0, f"{bad} mismatches")

    bad = 0
    for _ in range(150):
        deg = rng.randint(1, 40)
        coeffs = [rng.choice((-1, 0, 1)) for _ in range(deg)] + [rng.choice((-1, 1))]
        poly = IntPoly(tuple(coeffs))
        for p in primes_up_to(2 * deg):
            if p >= 1 + math.sqrt(deg):
                bad += vanishes_mod(poly, p) != divides(x_pow_minus_x(p), poly)
    yield Check(name, "vanishing iff divisible by x^p - x", bad == 0, f"{bad} mismatches")

    poly = IntPoly.from_descending([1, 1, 0])
    yield Check(
        name,
        "x^2 + x at p = 2 breaks the equivalence",
        vanishes_mod(poly, 2) and not divides(x_pow_minus_x(2), poly),
    )
    failed = [p for p in primes_up_to(100) if not vanishes_mod(x_pow_minus_x(p), p)]
    yield Check(name, "x^p - x vanishes mod p for p <= 100", not failed, str(failed))


def suite_numtheory(rng: random.Random) -> Iterator[Check]:
    name = "numtheory"
    bad = []
    for n in range(1, 101):
        prod = IntPoly((1,))
        for d in divisors(n):
            prod = prod * cyclotomic(d)
        if prod != IntPoly.monomial(n) - IntPoly((1,)):
            bad.append(n)
    yield Check(name, "product of Phi_d over d | n is x^n - 1", not bad, str(bad))
    bad = [n for n in range(1, 101) if cyclotomic(n).degree != totient(n)]
    yield Check(name, "deg Phi_n = totient(n)", not bad, str(bad))
    bad = [n for n in range(2, 10_001) if smallest_prime_in_range(n, 2 * n) is None]
    yield Check(name, "prime strictly between n and 2n, n <= 10^4", not bad, str(bad[:5]))
    bad = [p for p in primes_up_to(1000) if totient(p) != p - 1]
    yield Check(name, "totient(p) = p - 1", not bad, str(bad))
    sieve = set(primes_up_to(5000))
    bad = [n for n in range(5001) if is_prime(n) != (n in sieve)]
    yield Check(name, "is_prime agrees with sieve to 5000", not bad, str(bad[:5]))
    low = min(totient(n) * math.log(math.log(n)) / n for n in range(6, 10_001))
    yield Check(
        name,
        "totient * lnln(n) / n lower bound",
        abs(low - TOTIENT_LOGLOG_MIN) < 1e-12,
        f"min {low:.6f}",
    )


def suite_automata(rng: random.Random) -> Iterator[Check]:
    name = "automata"
    bad = 0
    for _ in range(1000):
        m = rng.randint(1, 1000)
        p = HornerParams(rng.randrange(m), m)
        i = rng.randrange(m)
        s = _rand_string(rng, rng.randint(1, 100))
        bad += horner_end_state(p, i, s) != run(build_horner(p), i, s.bits)
    yield Check(name, "Horner closed form = simulation", bad == 0, f"{bad} mismatches")

    bad = 0
    for _ in range(300):
        dfa = _rand_dfa(rng, rng.randint(1, 6))
        x = _rand_string(rng, rng.randint(1, 12))
        y = _rand_string(rng, rng.randint(1, 12))
        ex, fa, ex2, fa2 = (separates(m, dfa, x.bits, y.bits) for m in Mode)
        bad += (fa and not ex) or (fa2 and not fa) or (ex and not ex2)
        perm = list(range(dfa.k))
        rng.shuffle(perm)
        other = dfa.relabel(perm)
        bad += any(separates(m, dfa, x.bits, y.bits) != separates(m, other, x.bits, y.bits) for m in Mode)
    yield Check(name, "predicate implications and relabeling invariance", bad == 0, f"{bad}")

    bad = 0
    for _ in range(300):
        m = rng.randint(1, 30)
        h = build_horner(HornerParams(rng.randrange(m), m))
        s, t = _rand_pair(rng, rng.randint(1, 20))
        bad += separates(Mode.EXISTS, h, s.bits, t.bits) != separates(Mode.FORALL, h, s.bits, t.bits)
    yield Check(name, "Horner automata: exists = forall on equal lengths", bad == 0, f"{bad}")

    res = sep_number(6, Mode.EXISTS2)
    yield Check(name, "exists2 distance is 2 for n <= 6", res.value == 2, f"got {res.value}")


def suite_hornersep(rng: random.Random) -> Iterator[Check]:
    name = "hornersep"
    bad = 0
    for _ in range(500):
        n = rng.randint(1, 64)
        s, t = _rand_pair(rng, n)
        w = horner_distance(s, t)
        h = build_horner(w.params)
        ok = w.m <= 2 * n and w.m <= horner_bound(n) and separates(Mode.FORALL, h, s.bits, t.bits)
        ok = ok and horner_distance(t, s).m == w.m
        bad += not ok
    yield Check(name, "witness m <= 2n and forall-separates", bad == 0, f"{bad} failures")

    for n in range(1, 8):
        res = horner_sep_number(n)
        brute = max(horner_distance(s, t).m for s, t in _all_pairs(n))
        yield Check(name, f"D_H({n}) by polynomials = by pairs", res.value == brute, f"{res.value} vs {brute}")


def _all_pairs(n: int):
    strings = [BinaryString.from_int(v, n) for v in range(1 << n)]
    return itertools.combinations(strings, 2)


def suite_exhaustive(rng: random.Random) -> Iterator[Check]:
    name = "exhaustive"
    for k in range(1, 5):
        got, want = len(canonical_tables(k)), burnside_class_count(k)
        yield Check(name, f"{k}-state classes = Burnside count", got == want, f"{got} vs {want}")
    for mode, table in ((Mode.EXISTS, golden.TABLE_EXISTS), (Mode.FORALL, golden.TABLE_FORALL)):
        got = [sep_number(n, mode).value for n in range(1, 10)]
        yield Check(name, f"D_{mode}(1..9)", got == list(table[:9]), str(got))
    for mode in (Mode.EXISTS, Mode.FORALL):
        for n in range(1, 5):
            want = max(sep_distance(s, t, mode).k for s, t in _all_pairs(n))
            got = sep_number(n, mode).value
            yield Check(name, f"pair-set = per-pair search, {mode} n={n}", got == want, f"{got} vs {want}")
    bad = 0
    for _ in range(40):
        s, t = _rand_pair(rng, rng.randint(1, 10))
        for mode in (Mode.EXISTS, Mode.FORALL):
            bad += sep_distance(s, t, mode).k != sep_distance(s.complement(), t.complement(), mode).k
    yield Check(name, "bit-complement symmetry", bad == 0, f"{bad}")


def suite_golden(rng: random.Random) -> Iterator[Check]:
    name = "golden"
    s, t = golden.PAIR_ZEROS
    left, right = golden.TWO_STATE, golden.FOUR_STATE
    yield Check(
        name,
        "two-state DFA exists- but not forall-separates 0^8 / 1^6 0^2",
        separates(Mode.EXISTS, left, s.bits, t.bits) and not separates(Mode.FORALL, left, s.bits, t.bits),
    )
    ends = {q: (run(right, q, s.bits), run(right, q, t.bits)) for q in range(4)}
    yield Check(name, "four-state DFA end states", ends == golden.FOUR_STATE_ENDS, str(ends))
    yield Check(name, "d_exists = 2, d_forall = 4", (
        sep_distance(s, t, Mode.EXISTS).k, sep_distance(s, t, Mode.FORALL).k) == (2, 4))

    yield Check(
        name,
        "cyclotomic 1..6",
        all(cyclotomic(n) == p for n, p in golden.CYCLOTOMIC_SMALL.items()),
    )

    d = diff_poly(s, t)
    yield Check(
        name,
        "difference vanishes mod 2, 3 but not 5",
        (vanishes_mod(d, 2), vanishes_mod(d, 3), vanishes_mod(d, 5)) == (True, True, False),
    )

    hs, ht = golden.PAIR_H25
    p25 = HornerParams(2, 5)
    yield Check(
        name,
        "H(2,5) from 0 ends in 2 and 4",
        (horner_end_state(p25, 0, hs), horner_end_state(p25, 0, ht)) == (2, 4),
    )
    u = end_state_vector(build_horner(p25), hs.bits)
    v = end_state_vector(build_horner(p25), ht.bits)
    yield Check(name, "H(2,5) differs from all 5 starts", all(a != b for a, b in zip(u, v)))

    a, b = golden.PAIR_SPARSE
    d = diff_poly(a, b)
    yield Check(name, "sparse pair difference", d == golden.SPARSE_DIFF, str(d))
    yield Check(
        name,
        "vanishing mod 5, 7, 11",
        [vanishes_mod(d, m) for m in (5, 7, 11)] == [True, True, False],
    )
    yield Check(
        name,
        "x^5 - x, x^7 - x divide; x^11 - x does not",
        [divides(x_pow_minus_x(p), d) for p in (5, 7, 11)] == [True, True, False],
    )
    yield Check(
        name,
        "sparse difference vanishes mod 2..10, so d_H = 11",
        all(vanishes_mod(d, m) for m in range(2, 11))
        and horner_distance(a, b).m == golden.SPARSE_HORNER_DISTANCE,
    )
    yield Check(name, "d_forall = 4", sep_distance(a, b, Mode.FORALL).k == golden.SPARSE_FORALL_DISTANCE)
    yield Check(name, "s(x) of sparse string", str(string_to_poly(a)) == "x^11 + x^9")


SUITES: dict[str, Callable[[random.Random], Iterator[Check]]] = {
    "wordpoly": suite_wordpoly,
    "numtheory": suite_numtheory,
    "automata": suite_automata,
    "hornersep": suite_hornersep,
    "exhaustive": suite_exhaustive,
    "golden": suite_golden,
}


def run_suites(names: list[str] | None = None, seed: int = DEFAULT_SEED) -> list[Check]:
    names = names or list(SUITES)
    unknown = [n for n in names if n not in SUITES]
    if unknown:
        raise ValueError(f"unknown suite(s): {', '.join(unknown)}")
    checks = []
    for n in names:
        checks.extend(SUITES[n](random.Random(seed)))
    return checks
