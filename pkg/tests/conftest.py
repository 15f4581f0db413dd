"""Shared hypothesis strategies for the test suite."""

from hypothesis import strategies as st

from fanlab import Ordinal


def ordinals(max_depth: int = 2) -> st.SearchStrategy:
    """Canonical ordinals with hereditary exponent depth at most max_depth."""
    if max_depth == 0:
        return st.integers(0, 9).map(Ordinal.from_int)
    pairs = st.lists(
        st.tuples(ordinals(max_depth - 1), st.integers(1, 3)), max_size=3
    )

    def build(term_list):
        merged = {}
        for exp, coeff in term_list:
            merged[exp] = coeff
        return Ordinal(tuple(sorted(merged.items(), key=lambda t: t[0], reverse=True)))

    return pairs.map(build)


def cdw_pairs() -> st.SearchStrategy:
    return st.lists(
        st.tuples(st.integers(0, 15), st.integers(0, 15)), max_size=8
    )
