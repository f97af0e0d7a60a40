import math
from fractions import Fraction

import mpmath
import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from addrep.analytic import (
    CoefficientSeries,
    doubling_exponent,
    dyadic_sum,
    g_of,
    g_two_ways,
    h_cascade,
    h_cascade_recurrence,
    identity28_check,
    identity28_residuals,
    ineq33_check,
    lemma2_rhs,
    lemma3_constant,
    lemma4_bound,
    psi,
    required_bound_for_g,
    series_square,
    theorem2_exponent,
)
from addrep.errors import DomainError, OutOfBoundError, PositivityError, TruncationError
from addrep.partial_sums import sum_profile_for
from addrep.sequences import IntegerSequence

from conftest import random_sequence, sequences


def full(bound):
    return IntegerSequence.interval(1, bound)


# ---------------------------------------------------------------- psi


@pytest.mark.parametrize("Y", [1.0, 10.0, 200.0])
def test_psi_full_set_geometric(Y):
    v = psi(full(40 * int(Y) + 100), Y)
    exact = 1.0 / math.expm1(1.0 / Y)
    assert abs(v.value - exact) <= v.err + 1e-12 * exact


def test_psi_rejects_zero_and_short_truncation():
    with pytest.raises(PositivityError):
        psi(IntegerSequence([0, 1], 1000), 5.0)
    with pytest.raises(TruncationError):
        psi(full(50), 100.0)


# ---------------------------------------------------------------- g


def test_g_singleton_closed_form():
    A = IntegerSequence([1], required_bound_for_g(100))
    for N in (40, 100):
        v = g_of(A, N)
        assert abs(v.value - (1 + 4 * math.exp(-2 / N))) <= v.err + 1e-12


def test_g_full_set_is_one():
    v = g_of(full(required_bound_for_g(300)), 300)
    assert v.value == 1.0


def _g_oracle_eventually_constant(A, Y, k0):
    """g for a finite set: S_k is constant for k >= k0, so the tail is geometric."""
    S = sum_profile_for(A, k0).S
    q = mpmath.exp(mpmath.mpf(-2) / Y)
    head = mpmath.fsum(int(S[k]) * q ** k for k in range(1, k0))
    tail = int(S[k0]) * q ** k0 / (1 - q)
    return float(1 + 4 * (1 - q) * (head + tail))


@settings(max_examples=20, deadline=None)
@given(st.sets(st.integers(1, 40), min_size=1), st.sampled_from([5.0, 20.0, 60.0]))
def test_g_matches_geometric_tail_oracle(elems, Y):
    bound = required_bound_for_g(Y)
    A = IntegerSequence(sorted(elems), bound)
    v = g_of(A, Y)
    assert abs(v.value - _g_oracle_eventually_constant(A, Y, 41)) <= v.err + 1e-12 * abs(v.value)


def test_g_two_ways_agree(rng):
    for _ in range(5):
        A = random_sequence(rng, 6000, rng.uniform(0.05, 0.95))
        for Y in (10.0, 50.0, 150.0):
            a, b = g_two_ways(A, Y)
            assert abs(a.value - b.value) <= a.err + b.err + 1e-9


# ---------------------------------------------------------------- exact series / identity


def test_series_square_small():
    f = CoefficientSeries([1, 2, 3], 4)
    assert list(series_square(f).coeffs) == [1, 4, 10, 12, 9]


def test_series_square_large_coefficients():
    big = [3**40, -(2**61), 7, 0, -(5**30)]
    f = CoefficientSeries(big, 6)
    want = [0] * 7
    for i, a in enumerate(big):
        for j, b in enumerate(big):
            if i + j <= 6:
                want[i + j] += a * b
    assert list(series_square(f).coeffs) == want


def _identity_oracle(A, D):
    """Residuals from plain Python integer loops, independent of the library series code."""
    f = [0] * (D + 1)
    for a in A.elements:
        if a <= D:
            f[int(a)] = 1
    sq = [0] * (D + 1)
    alt = [0] * (D + 1)
    for i in range(D + 1):
        if f[i]:
            for j in range(D + 1 - i):
                if f[j]:
                    sq[i + j] += 1
                    alt[i + j] += (-1) ** (i + j)
    r2 = [0] * (D + 2)
    for i in range(D + 2):
        for j in range(i, D + 2 - i):
            if i <= D and j <= D and f[i] and f[j]:
                r2[i + j] += 1
    out = []
    for n in range(D + 1):
        lhs = 2 * f[(n - 1) // 2] if n % 2 else 0
        rhs = sq[n] - (sq[n - 1] if n else 0) - alt[n] - (alt[n - 1] if n else 0)
        if n % 2 and n >= 3:
            k = (n - 1) // 2
            rhs += 4 * (r2[2 * k] - r2[2 * k + 1])
        out.append(lhs - rhs)
    return out


@settings(max_examples=25, deadline=None)
@given(sequences(max_bound=60, positive=True))
def test_identity_residuals_zero_and_match_oracle(A):
    D = A.bound
    got = identity28_residuals(A, D)
    assert got == _identity_oracle(A, D)
    assert all(r == 0 for r in got)


def test_identity_preconditions():
    with pytest.raises(PositivityError):
        identity28_check(IntegerSequence([0, 1], 10), 10)
    with pytest.raises(OutOfBoundError):
        identity28_check(IntegerSequence([1], 10), 11)


# ---------------------------------------------------------------- inequality 33


def test_ineq33_full_set_values():
    A = full(required_bound_for_g(50))
    v = ineq33_check(A, 50.0)
    p = 1 / math.expm1(1 / 50)
    p2 = 1 / math.expm1(2 / 50)
    assert v.value == pytest.approx(p * p + 50 - 100 * p2, abs=1e-6)


@settings(max_examples=15, deadline=None)
@given(st.integers(0, 2**32 - 1), st.sampled_from([20.0, 60.0, 120.0]))
def test_ineq33_nonnegative(seed, Y):
    rng = np.random.default_rng(seed)
    A = random_sequence(rng, 8000, rng.uniform(0.05, 0.95))
    v = ineq33_check(A, Y)
    assert v.value >= -v.err


def test_doubling_exponent_closes_inequality(rng):
    A = random_sequence(rng, 8000, 0.4)
    Y = 80.0
    h = doubling_exponent(A, Y)
    p, p2 = psi(A, Y).value, psi(A, Y / 2).value
    assert p * p == pytest.approx(2 * Y * math.exp(-h) * p2, rel=1e-12)


# ---------------------------------------------------------------- dyadic sum & cascade


def test_dyadic_sum_half():
    mpmath.mp.dps = 40
    exact = mpmath.nsum(lambda n: 2**n * mpmath.mpf("0.5") ** (2**n), [0, mpmath.inf])
    assert dyadic_sum(0.5) == pytest.approx(float(exact), rel=1e-15)
    assert dyadic_sum(0.5) == pytest.approx(1.2814941480755806, rel=1e-15)


@given(st.floats(0.001, 0.999))
def test_dyadic_sum_bounds(x):
    s = dyadic_sum(x)
    assert s <= 2 * x / (1 - x) + 1e-12
    assert s <= x * (1 + x) / (1 - x) + 1e-12
    assert s >= x


def test_dyadic_sum_domain():
    for x in (0.0, 1.0, -0.5):
        with pytest.raises(DomainError):
            dyadic_sum(x)


@given(st.integers(0, 40), st.floats(1.0, 1e6), st.floats(0.1, 10.0))
def test_cascade_forms_agree(alpha, Y, slope):
    for h in (lambda y: 3.0, lambda y: slope * y):
        a = h_cascade(h, Y, alpha)
        b = h_cascade_recurrence(h, Y, alpha)
        assert abs(a - b) <= 1e-12 * max(abs(a), abs(b), 1e-300)


def test_cascade_constant_closed_form():
    assert h_cascade(lambda y: 1.0, 100.0, 3) == 1 - 1 / 8
    assert h_cascade(lambda y: 1.0, 100.0, 0) == 0.0


def test_lemma2_alpha_zero_is_psi():
    A = random_sequence(np.random.default_rng(3), 3000, 0.5)
    assert lemma2_rhs(A, 60.0, 0, lambda y: 1.0) == pytest.approx(psi(A, 60.0).value, rel=1e-14)


def test_lemma2_with_tight_exponent_is_exact(rng):
    # with h the exact doubling exponent the cascade telescopes to psi(Y)
    A = random_sequence(rng, 20000, 0.6)
    Y = 256.0
    h = lambda y: doubling_exponent(A, y)  # noqa: E731
    for alpha in range(0, 6):
        assert lemma2_rhs(A, Y, alpha, h) == pytest.approx(psi(A, Y).value, rel=1e-10)


def test_lemma3_constant_is_minimal(rng):
    A = random_sequence(rng, 20000, 0.7)
    Y = 300.0
    c, alpha = lemma3_constant(A, Y)
    for a in range(int(math.log2(Y)) + 1):
        y0 = Y / 2**a
        val = (psi(A, y0).value * 2**a / Y) ** (1 / 2**a)
        assert val <= math.exp(-c / Y) * (1 + 1e-12) or a == alpha
        if a == alpha:
            assert val == pytest.approx(math.exp(-c / Y), rel=1e-12)


def test_lemma4_bounds_cascade_of_g(rng):
    for _ in range(3):
        A = random_sequence(rng, 60000, rng.uniform(0.05, 0.95))
        for Y, alpha in ((64.0, 2), (256.0, 4), (1000.0, 5)):
            d = 2.3
            H = h_cascade(lambda y: d * g_of(A, y).value / y, Y, alpha)
            bound = lemma4_bound(A, Y, alpha, d)
            assert H <= bound.value + bound.err


def test_theorem2_exponent_full_set():
    A = full(10000)
    v = theorem2_exponent(A, 100.0)
    assert v.value == pytest.approx(2.3 / 200 * math.log2(100), rel=1e-15)
    assert v.params["weighted_sum"] == 0.0


def test_abel_weighting_float_forms(rng):
    # sum_k d_k q^k and (1-q) sum_k S_k q^k agree as exact rationals at dyadic q
    A = random_sequence(rng, 301, 0.5)
    S = sum_profile_for(A, 150).S
    q = Fraction(1, 2)
    d = [int(S[k] - S[k - 1]) for k in range(1, 151)]
    lhs = sum(d[k - 1] * q**k for k in range(1, 151))
    rhs = (1 - q) * sum(int(S[k]) * q**k for k in range(1, 150)) + int(S[150]) * q**150
    assert lhs == rhs
