import numpy as np
import pytest
from hypothesis import strategies as st

from addrep.sequences import IntegerSequence


def random_sequence(rng, bound, density, positive=True):
    """Bernoulli(density) subset of [1, bound] (or [0, bound])."""
    mask = rng.random(bound + 1) < density
    if positive:
        mask[0] = False
    return IntegerSequence(np.flatnonzero(mask), bound)


@pytest.fixture
def rng():
    return np.random.default_rng(20240601)


@st.composite
def sequences(draw, max_bound=200, positive=False):
    bound = draw(st.integers(min_value=1, max_value=max_bound))
    lo = 1 if positive else 0
    elems = draw(st.sets(st.integers(min_value=lo, max_value=bound), max_size=bound + 1))
    return IntegerSequence(sorted(elems), bound)
