"""Hypothesis strategies built on the seeded generators."""

from hypothesis import strategies as st

from ccsp.gen import GenParams

seeds = st.integers(min_value=0, max_value=2**32)


@st.composite
def sp_params(draw, max_n=8, max_m=10, with_deletion=False):
    m = draw(st.integers(2 if with_deletion else 1, max_m))
    tie_p = draw(st.sampled_from([0.0, 0.2, 0.6, 1.0]))
    # strict rows need room for m - 1 distinct steps
    caps = [None, 2 * m] if tie_p == 0 else [None, 0, 1, 3, 2 * m]
    return GenParams(
        n=draw(st.integers(1, max_n)),
        m=m,
        seed=draw(seeds),
        value_cap=draw(st.sampled_from(caps)),
        tie_probability=tie_p,
        d=draw(st.integers(0, min(4, m - 1))) if with_deletion else 0,
    )
