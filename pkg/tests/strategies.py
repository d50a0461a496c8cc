"""Hypothesis strategies shared by the test modules."""

from hypothesis import strategies as st

from birkhoff.partitions import Partition


def int_matrices(max_rows=6, max_cols=6, bound=5, min_rows=0, min_cols=0):
    return st.integers(min_rows, max_rows).flatmap(
        lambda r: st.integers(min_cols, max_cols).flatmap(
            lambda c: st.lists(
                st.lists(st.integers(-bound, bound), min_size=c, max_size=c),
                min_size=r, max_size=r).map(lambda rows: (rows, c))))


@st.composite
def partitions(draw, m, max_size=6):
    d = draw(st.integers(0, max_size))
    parts = []
    while d > 0:
        x = draw(st.integers(1, min(d, m)))
        parts.append(x)
        d -= x
    return Partition.of(parts, m)


@st.composite
def pairs(draw, max_m=4, max_size=6):
    m = draw(st.integers(1, max_m))
    return draw(partitions(m, max_size)), draw(partitions(m, max_size))
