import json
import random

import pytest
from hypothesis import given
from hypothesis import strategies as st

from sepwords import golden
from sepwords.automata import (
    Dfa,
    HornerParams,
    Mode,
    build_horner,
    end_state_vector,
    horner_end_state,
    run,
    separates,
)
from sepwords.wordpoly import BinaryString, parse_binary_string

from .conftest import raw_tables

S, T = golden.PAIR_ZEROS


@st.composite
def dfas(draw, max_k=6):
    k = draw(st.integers(1, max_k))
    rows = [(draw(st.integers(0, k - 1)), draw(st.integers(0, k - 1))) for _ in range(k)]
    return Dfa.from_rows(rows)


words = st.lists(st.integers(0, 1), min_size=1, max_size=16)


def test_dfa_validation():
    with pytest.raises(ValueError):
        Dfa.from_rows([(0, 2), (1, 1)])
    with pytest.raises(ValueError):
        Dfa(0, ())
    with pytest.raises(ValueError):
        Dfa(2, ((0, 0),))


def test_dfa_json_round_trip():
    d = golden.FOUR_STATE
    obj = d.to_json()
    assert obj == {"k": 4, "table": [[2, 0], [3, 1], [1, 1], [0, 1]]}
    assert Dfa.from_json(json.loads(json.dumps(obj))) == d


def test_run_examples():
    assert run(golden.TWO_STATE, 0, S.bits) == 0
    assert run(golden.TWO_STATE, 1, ()) == 1
    h25 = build_horner(HornerParams(2, 5))
    assert run(h25, 0, parse_binary_string("101111").bits) == 2
    with pytest.raises(ValueError):
        run(h25, 5, (0,))


def test_end_state_vector_examples():
    assert end_state_vector(golden.TWO_STATE, T.bits) == (1, 1)
    ident = Dfa.from_rows([(q, q) for q in range(5)])
    assert end_state_vector(ident, (1, 0, 1, 1)) == (0, 1, 2, 3, 4)
    h25 = build_horner(HornerParams(2, 5))
    expected = tuple((i * 2**6 + 47) % 5 for i in range(5))
    assert expected == (2, 1, 0, 4, 3)  # 2^6 = 4 (mod 5)
    assert end_state_vector(h25, parse_binary_string("101111").bits) == expected


def test_two_state_example():
    assert run(golden.TWO_STATE, 0, S.bits) == 0
    assert run(golden.TWO_STATE, 0, T.bits) == 1
    assert run(golden.TWO_STATE, 1, S.bits) == run(golden.TWO_STATE, 1, T.bits) == 1
    assert separates(Mode.EXISTS, golden.TWO_STATE, S.bits, T.bits)
    assert not separates(Mode.FORALL, golden.TWO_STATE, S.bits, T.bits)


def test_four_state_example():
    for q, ends in golden.FOUR_STATE_ENDS.items():
        assert (run(golden.FOUR_STATE, q, S.bits), run(golden.FOUR_STATE, q, T.bits)) == ends
    assert separates(Mode.FORALL, golden.FOUR_STATE, S.bits, T.bits)


def test_single_state_never_forall2():
    one = Dfa.from_rows([(0, 0)])
    for mode in Mode:
        assert not separates(mode, one, (0,), (1, 1))


def test_separates_rejects_empty():
    with pytest.raises(ValueError):
        separates(Mode.EXISTS, golden.TWO_STATE, (), (0,))


def test_separates_unequal_lengths_allowed():
    # parity of the number of ones: 1 vs 110
    parity = build_horner(HornerParams(1, 2))
    assert separates(Mode.FORALL, parity, (1,), (1, 1, 0))


def test_squared_modes_by_hand():
    d = Dfa.from_rows([(1, 1), (1, 1)])  # everything lands in 1
    assert not separates(Mode.EXISTS2, d, (0,), (1,))
    d = Dfa.from_rows([(0, 1), (1, 1)])
    # end vectors (0, 1) and (1, 1): sets overlap, but 0 != 1 for some pair
    assert separates(Mode.EXISTS2, d, (0,), (1,))
    assert not separates(Mode.FORALL2, d, (0,), (1,))
    swap = Dfa.from_rows([(0, 1), (1, 0)])
    assert not separates(Mode.FORALL2, swap, (0,), (1,))


def test_build_horner_examples():
    assert build_horner(HornerParams(1, 2)).table == ((0, 1), (1, 0))
    assert build_horner(HornerParams(2, 5)).table == ((0, 1), (2, 3), (4, 0), (1, 2), (3, 4))
    assert build_horner(HornerParams(0, 1)).table == ((0, 0),)


@pytest.mark.parametrize("b, m", [(-1, 3), (3, 3), (0, 0)])
def test_horner_params_invalid(b, m):
    with pytest.raises(ValueError):
        HornerParams(b, m)


def test_horner_end_state_examples():
    p = HornerParams(2, 5)
    assert horner_end_state(p, 0, parse_binary_string("101111")) == 2
    assert horner_end_state(p, 0, parse_binary_string("111011")) == 4
    for i in range(5):
        assert horner_end_state(p, i, BinaryString((0,) * 7)) == (i * 2**7) % 5
    with pytest.raises(ValueError):
        horner_end_state(p, 5, parse_binary_string("1"))


def test_horner_closed_form_random():
    rng = random.Random(7)
    for _ in range(1000):
        m = rng.randint(1, 1000)
        p = HornerParams(rng.randrange(m), m)
        i = rng.randrange(m)
        s = BinaryString(tuple(rng.randint(0, 1) for _ in range(rng.randint(1, 100))))
        assert horner_end_state(p, i, s) == run(build_horner(p), i, s.bits)


@given(dfas(), words, words)
def test_predicate_implications(d, x, y):
    ex, fa, ex2, fa2 = (separates(m, d, x, y) for m in Mode)
    assert not fa or ex
    assert not fa2 or fa
    assert not ex or ex2


@given(dfas(), words, words, st.randoms(use_true_random=False))
def test_isomorphism_invariance(d, x, y, rnd):
    perm = list(range(d.k))
    rnd.shuffle(perm)
    other = d.relabel(perm)
    for mode in Mode:
        assert separates(mode, d, x, y) == separates(mode, other, x, y)


@given(st.integers(1, 40), st.data())
def test_horner_collapse(m, data):
    b = data.draw(st.integers(0, m - 1))
    n = data.draw(st.integers(1, 20))
    s = data.draw(st.lists(st.integers(0, 1), min_size=n, max_size=n))
    t = data.draw(st.lists(st.integers(0, 1), min_size=n, max_size=n))
    h = build_horner(HornerParams(b, m))
    assert separates(Mode.EXISTS, h, s, t) == separates(Mode.FORALL, h, s, t)


@given(dfas(), words)
def test_vector_matches_run(d, w):
    assert end_state_vector(d, w) == tuple(run(d, q, w) for q in range(d.k))


def test_exists2_two_states_suffice_any_lengths():
    # a 2-state DFA exists2-separates every pair of distinct strings, whatever the lengths
    two = [Dfa.from_rows(rows) for rows in raw_tables(2)]
    strings = [BinaryString.from_int(v, n) for n in range(1, 6) for v in range(1 << n)]
    for i, x in enumerate(strings):
        for y in strings[i + 1 :]:
            assert any(separates(Mode.EXISTS2, d, x.bits, y.bits) for d in two)
