"""Hypothesis strategies for exact rational data."""
from fractions import Fraction

from hypothesis import strategies as st

rationals = st.builds(Fraction, st.integers(-6, 6), st.integers(1, 4))


def vectors(n):
    return st.tuples(*([rationals] * n))


def matrices(rows, cols):
    return st.lists(st.lists(rationals, min_size=cols, max_size=cols),
                    min_size=rows, max_size=rows)


seeds = st.integers(0, 2**32 - 1)
