import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from addrep.convolution import (
    convolve_indicators,
    ntt,
    ntt_convolve,
    packed_self_counts,
    self_convolve_indicator,
)

bits = st.lists(st.booleans(), min_size=1, max_size=300)


def _reference(a, b, n):
    return np.convolve(a.astype(np.int64), b.astype(np.int64))[: n + 1]


def test_ntt_roundtrip():
    x = np.arange(16, dtype=np.int64)
    assert np.array_equal(ntt(ntt(x), inverse=True), x)


@given(bits, bits)
def test_ntt_convolve_matches_numpy(a, b):
    a = np.array(a, dtype=np.int64)
    b = np.array(b, dtype=np.int64)
    n = len(a) + len(b) - 2
    assert np.array_equal(ntt_convolve(a, b, n), _reference(a, b, n))


@given(bits)
def test_packed_counts_match_numpy(a):
    a = np.array(a, dtype=bool)
    n = len(a) - 1
    ref = _reference(a, a, n)
    assert np.array_equal(packed_self_counts(a, n), ref)
    assert np.array_equal(self_convolve_indicator(a, n), ref)


@settings(max_examples=5, deadline=None)
@given(st.integers(0, 2**32 - 1))
def test_large_path_is_exact(seed):
    rng = np.random.default_rng(seed)
    n = 70_000  # above the packed-kernel limit
    a = rng.random(n + 1) < 0.5
    got = self_convolve_indicator(a, n)
    # spot-check against direct dot products
    for m in rng.integers(0, n, 20):
        assert got[m] == int(np.dot(a[: m + 1].astype(np.int64), a[m::-1].astype(np.int64)))


def test_convolve_indicators_asymmetric():
    a = np.array([0, 1, 1, 0, 1], dtype=bool)
    b = np.array([1, 0, 0, 1, 0], dtype=bool)
    assert np.array_equal(convolve_indicators(a, b, 8), _reference(a, b, 8))


def test_ntt_rejects_overflowing_inputs():
    big = np.full(4, 10**9, dtype=np.int64)
    with pytest.raises(Exception):
        ntt_convolve(big, big, 6)
