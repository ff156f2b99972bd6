"""Worked examples with known answers, shared by the test-suite and ``verify``.

The two DFAs for the ``0^8`` / ``1^6 0^2`` pair exist only as drawings; the
tables below were reconstructed so that every end state listed for them
holds (checked by simulation in the tests).  States ``a, b, c, d`` are
``0, 1, 2, 3``.
"""

from __future__ import annotations

from .automata import Dfa
from .wordpoly import IntPoly, parse_binary_string

# all-zeros versus six ones then two zeros
PAIR_ZEROS = (parse_binary_string("0000 0000"), parse_binary_string("1111 1100"))

# exists-separates PAIR_ZEROS from a, but b absorbs both strings
TWO_STATE = Dfa.from_rows([(0, 1), (1, 1)])

# forall-separates PAIR_ZEROS:
#   a -> (a, b), b -> (b, a), c -> (c, a), d -> (d, a)
FOUR_STATE = Dfa.from_rows([(2, 0), (3, 1), (1, 1), (0, 1)])
FOUR_STATE_ENDS = {0: (0, 1), 1: (1, 0), 2: (2, 0), 3: (3, 0)}

# H(2, 5) pair: values 47 and 59 in base 2
PAIR_H25 = (parse_binary_string("10 1111"), parse_binary_string("11 1011"))

# x^11 + x^9 versus x^5 + x^3
PAIR_SPARSE = (
    parse_binary_string("0000 1010 0000 0000"),
    parse_binary_string("0000 0000 0010 1000"),
)
SPARSE_DIFF = IntPoly.from_descending([1, 0, 1, 0, 0, 0, -1, 0, -1, 0, 0, 0])
# x^3 (x^2 + 1)(x^6 - 1) vanishes modulo every m <= 10, including 8 and 9
SPARSE_HORNER_DISTANCE = 11
SPARSE_FORALL_DISTANCE = 4

CYCLOTOMIC_SMALL = {
    1: IntPoly.from_descending([1, -1]),
    2: IntPoly.from_descending([1, 1]),
    3: IntPoly.from_descending([1, 1, 1]),
    4: IntPoly.from_descending([1, 0, 1]),
    5: IntPoly.from_descending([1, 1, 1, 1, 1]),
    6: IntPoly.from_descending([1, -1, 1]),
}

# largest exists/forall distances for n = 1..18
TABLE_EXISTS = (2, 2, 2, 3, 3, 3, 3, 3, 3, 4, 4, 4, 4, 4, 4, 4, 4, 5)
TABLE_FORALL = (2, 2, 3, 3, 3, 3, 3, 4, 4, 4, 4, 4, 4, 4, 5, 5, 5, 5)
