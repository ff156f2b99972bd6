"""Acceptance suite. Run with ``pytest tests/test_acceptance.py -v``; the
terminal summary prints one PASS/FAIL line per criterion."""

import itertools
import math
import random
import time

import numpy as np
import pytest

from sepwords import cli, golden
from sepwords.automata import HornerParams, Mode, build_horner, horner_end_state, run, separates
from sepwords.exhaustive import sep_distance, sep_number
from sepwords.hornersep import horner_distance, horner_sep_number
from sepwords.numtheory import cyclotomic, divisors, totient
from sepwords.tables import parse_table
from sepwords.wordpoly import (
    BinaryString,
    IntPoly,
    diff_poly,
    divides,
    parse_binary_string,
    vanishes_mod,
    x_pow_minus_x,
)

from .conftest import all_pairs, all_strings
from .test_hornersep import signature_distances

SEED = 20231016
SPARSE_S, SPARSE_T = golden.PAIR_SPARSE
SPARSE_P = diff_poly(SPARSE_S, SPARSE_T)


def _table_values(capsys, mode, max_n):
    code = cli.cmd_dispatch(["table", "--mode", mode, "--max-n", str(max_n), "--format", "csv", "--no-cache"])
    out = capsys.readouterr().out
    assert code == 0
    return parse_table(out, "csv", mode).values()


@pytest.mark.criterion(1)
def test_c1_exists_table(capsys):
    start = time.monotonic()
    assert _table_values(capsys, "exists", 12) == [2, 2, 2, 3, 3, 3, 3, 3, 3, 4, 4, 4]
    assert time.monotonic() - start <= 30 * 60


@pytest.mark.criterion(2)
def test_c2_forall_table(capsys):
    start = time.monotonic()
    assert _table_values(capsys, "forall", 12) == [2, 2, 3, 3, 3, 3, 3, 4, 4, 4, 4, 4]
    assert time.monotonic() - start <= 30 * 60


@pytest.mark.criterion(3)
def test_c3_vanishing_pattern():
    assert str(SPARSE_P) == "x^11 + x^9 - x^5 - x^3"
    assert vanishes_mod(SPARSE_P, 5)
    assert vanishes_mod(SPARSE_P, 7)
    assert not vanishes_mod(SPARSE_P, 11)


@pytest.mark.criterion(3)
def test_c3_divisibility():
    assert divides(x_pow_minus_x(5), SPARSE_P)
    assert divides(x_pow_minus_x(7), SPARSE_P)
    assert not divides(x_pow_minus_x(11), SPARSE_P)


@pytest.mark.criterion(3)
def test_c3_forall_distance():
    res = sep_distance(SPARSE_S, SPARSE_T, Mode.FORALL)
    assert res.k == 4
    assert separates(Mode.FORALL, res.witness, SPARSE_S.bits, SPARSE_T.bits)


@pytest.mark.criterion(3)
def test_c3_horner_distance_is_nine():
    # Kept as stated. The computed value is 11: the difference also vanishes
    # modulo 8 and 9 (x^3 (x^2 + 1)(x^6 - 1)), so no modulus below 11 separates.
    assert horner_distance(SPARSE_S, SPARSE_T).m == 9


@pytest.mark.criterion(4)
def test_c4_zeros_pair_difference():
    s, t = golden.PAIR_ZEROS
    p = diff_poly(s, t)
    assert p == -IntPoly.from_descending([1, 1, 1, 1, 1, 1, 0, 0])
    assert vanishes_mod(p, 2)
    assert vanishes_mod(p, 3)
    assert not vanishes_mod(p, 5)


@pytest.mark.criterion(5)
def test_c5_h25_example():
    s, t = golden.PAIR_H25
    p = HornerParams(2, 5)
    assert horner_end_state(p, 0, s) == 2
    assert horner_end_state(p, 0, t) == 4
    h = build_horner(p)
    assert all(run(h, q, s.bits) != run(h, q, t.bits) for q in range(5))
    assert separates(Mode.FORALL, h, s.bits, t.bits)


@pytest.mark.criterion(6)
def test_c6_closed_form_matches_simulation():
    rng = random.Random(SEED)
    start = time.monotonic()
    failures = 0
    for _ in range(1000):
        m = rng.randint(1, 1000)
        p = HornerParams(rng.randrange(m), m)
        i = rng.randrange(m)
        n = rng.randint(1, 100)
        s = BinaryString(tuple(rng.randint(0, 1) for _ in range(n)))
        failures += horner_end_state(p, i, s) != run(build_horner(p), i, s.bits)
    assert failures == 0
    assert time.monotonic() - start <= 10


@pytest.mark.criterion(7)
def test_c7_horner_witness_bound():
    rng = random.Random(SEED)
    start = time.monotonic()
    failures, done = 0, 0
    while done < 500:
        n = rng.randint(1, 64)
        s = BinaryString(tuple(rng.randint(0, 1) for _ in range(n)))
        t = BinaryString(tuple(rng.randint(0, 1) for _ in range(n)))
        if s == t:
            continue
        done += 1
        w = horner_distance(s, t)
        h = build_horner(w.params)
        ok = w.m <= 2 * n and all(run(h, q, s.bits) != run(h, q, t.bits) for q in range(w.m))
        failures += not ok
    assert failures == 0
    assert time.monotonic() - start <= 60


@pytest.mark.criterion(8)
def test_c8_vanishing_iff_divisible_by_x_p_minus_x():
    rng = random.Random(SEED)
    start = time.monotonic()
    failures, done = 0, 0
    while done < 500:
        deg = rng.randint(1, 60)
        coeffs = [rng.choice((-1, 0, 1)) for _ in range(deg)] + [rng.choice((-1, 1))]
        p = IntPoly(tuple(coeffs))
        lo = math.ceil(1 + math.sqrt(deg))
        primes = [q for q in range(max(lo, 2), 2 * deg + 1) if all(q % d for d in range(2, q))]
        if not primes:
            continue
        done += 1
        for q in primes:
            failures += vanishes_mod(p, q) != divides(x_pow_minus_x(q), p)
    assert failures == 0
    assert time.monotonic() - start <= 60


@pytest.mark.criterion(8)
def test_c8_small_prime_counterexample():
    p = IntPoly.from_descending([1, 1, 0])  # x^2 + x
    assert vanishes_mod(p, 2)
    assert not divides(x_pow_minus_x(2), p)


@pytest.mark.criterion(9)
def test_c9_cyclotomic():
    expected = {
        1: [1, -1],
        2: [1, 1],
        3: [1, 1, 1],
        4: [1, 0, 1],
        5: [1, 1, 1, 1, 1],
        6: [1, -1, 1],
    }
    for n, desc in expected.items():
        assert cyclotomic(n) == IntPoly.from_descending(desc)
    one = IntPoly((1,))
    for n in range(1, 101):
        prod = one
        for d in divisors(n):
            prod = prod * cyclotomic(d)
        assert prod == IntPoly.monomial(n) - one
        assert cyclotomic(n).degree == totient(n)


def _raw_end_vectors(k, n):
    """End states of every raw k-state table from every start on every length-n string.

    Shape (k^(2k), 2^n, k); string index v has its first letter as the top bit.
    """
    flat = np.array(list(itertools.product(range(k), repeat=2 * k)), dtype=np.int8)
    delta = flat.reshape(-1, k, 2)
    strings = np.array([s.bits for s in all_strings(n)], dtype=np.int8)
    states = np.broadcast_to(np.arange(k, dtype=np.int8), (len(flat), len(strings), k)).copy()
    rows = np.arange(len(flat))[:, None, None]
    for j in range(n):
        states = delta[rows, states, strings[None, :, j, None]]
    return states


def _naive_max_distance(n, mode, k_max=5):
    pairs = np.array([(s.to_int(), t.to_int()) for s, t in all_pairs(n)])
    dist = np.zeros(len(pairs), dtype=int)
    for k in range(1, k_max + 1):
        todo = np.flatnonzero(dist == 0)
        if not len(todo):
            break
        vecs = _raw_end_vectors(k, n)
        u, v = vecs[:, pairs[todo, 0]], vecs[:, pairs[todo, 1]]
        if mode == "exists":
            hit = (u != v).any(axis=2).any(axis=0)
        elif mode == "forall":
            hit = (u != v).all(axis=2).any(axis=0)
        elif mode == "exists2":
            same_const = (u == u[..., :1]).all(axis=2) & (v == u[..., :1]).all(axis=2)
            hit = (~same_const).any(axis=0)
        else:
            shared = (u[..., :, None] == v[..., None, :]).any(axis=(2, 3))
            hit = (~shared).any(axis=0)
        dist[todo[hit]] = k
    assert (dist > 0).all()
    return int(dist.max())


@pytest.mark.criterion(10)
@pytest.mark.parametrize("mode", ["exists", "forall"])
@pytest.mark.parametrize("n", [1, 2, 3, 4, 5])
def test_c10_pairset_matches_naive(mode, n):
    assert sep_number(n, mode).value == _naive_max_distance(n, mode)


@pytest.mark.criterion(11)
@pytest.mark.parametrize("n", range(1, 11))
def test_c11_horner_number_matches_pairwise(n):
    value = horner_sep_number(n).value
    assert value == int(signature_distances(n).max())
    assert sep_number(n, "forall").value <= value <= 2 * n


@pytest.mark.criterion(12)
@pytest.mark.parametrize("n", range(1, 9))
def test_c12_exists2_is_two(n):
    assert sep_number(n, Mode.EXISTS2).value == 2
    if n <= 5:
        assert _naive_max_distance(n, "exists2", k_max=2) == 2


@pytest.mark.criterion(12)
def test_c12_exists2_two_state_covers_all_pairs_n8():
    vecs = _raw_end_vectors(2, 8)  # (16, 256, 2)
    const = np.where((vecs[..., 0] == vecs[..., 1]), vecs[..., 0], -1)  # -1 if not constant
    i, j = np.triu_indices(256, k=1)
    separated = ~((const[:, i] >= 0) & (const[:, i] == const[:, j]))
    assert separated.any(axis=0).all()


@pytest.mark.criterion(12)
@pytest.mark.parametrize("n", [1, 2, 3, 4])
def test_c12_forall2_is_n_plus_one(n):
    assert sep_number(n, Mode.FORALL2).value == n + 1
    if n <= 3:
        assert _naive_max_distance(n, "forall2") == n + 1
