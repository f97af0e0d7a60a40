"""Monotonicity-defect statistics built from R2.

``S(k) = sum_{l<=k} (R2(2l) - R2(2l+1))``, its positive part, the
range ``m(N) = floor(N (ln N + ln ln N))`` and the maxima ``T(N)``,
``T+(N)`` over that range.
"""

import csv
import math
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .errors import DomainError, OutOfBoundError, TruncationError
from .repfuncs import rep_profiles

__all__ = [
    "SumProfile",
    "s_profile",
    "sum_profile_for",
    "m_of",
    "t_range",
    "t_of",
    "t_plus",
    "l1_sum",
    "abel_sides",
    "write_sums_csv",
]

T_VARIANTS = ("v2", "v1")


@dataclass(frozen=True, eq=False)
class SumProfile:
    """``S`` and ``S_plus`` with index 0 holding the empty sum (always 0)."""

    K: int
    S: np.ndarray
    S_plus: np.ndarray

    def __eq__(self, other):
        if not isinstance(other, SumProfile):
            return NotImplemented
        return self.K == other.K and np.array_equal(self.S, other.S)


def s_profile(P, K):
    if K < 0:
        raise DomainError(f"K must be non-negative, got {K}")
    if 2 * K + 1 > P.N:
        raise OutOfBoundError(f"S up to k={K} needs R2 up to {2 * K + 1}, profile stops at {P.N}")
    diffs = P.R2[2:2 * K + 1:2] - P.R2[3:2 * K + 2:2]
    S = np.zeros(K + 1, dtype=np.int64)
    np.cumsum(diffs, out=S[1:])
    S_plus = np.maximum(S, 0)
    S.setflags(write=False)
    S_plus.setflags(write=False)
    return SumProfile(K, S, S_plus)


def sum_profile_for(A, K):
    """S of sequence ``A`` up to at least ``K``, cached on the sequence.

    The first call profiles the whole truncation, so sweeps over many
    scales pay for one convolution.
    """
    if 2 * K + 1 > A.bound:
        raise TruncationError(
            f"S(k) for k <= {K} needs the sequence up to {2 * K + 1}; bound is {A.bound}")
    sp = A._cache.get("sum_profile")
    if sp is None or sp.K < K:
        prof = rep_profiles(A, A.bound)
        sp = s_profile(prof, (prof.N - 1) // 2)
        A._cache["sum_profile"] = sp
    return sp


def m_of(N):
    """``floor(N (ln N + ln ln N))`` with natural logarithms."""
    if N < 3:
        raise DomainError(f"m(N) needs N >= 3, got {N}")
    return math.floor(N * (math.log(N) + math.log(math.log(N))))


def t_range(N, variant="v2"):
    """Upper index of the max defining T(N): ``m(N)`` (v2) or ``N`` (v1)."""
    if variant == "v2":
        return m_of(N)
    if variant == "v1":
        if N < 1:
            raise DomainError(f"T(N) needs N >= 1, got {N}")
        return int(N)
    raise DomainError(f"unknown T variant {variant!r}")


def _span(S, N, variant):
    top = t_range(N, variant)
    if S.K < top:
        raise OutOfBoundError(f"T({N}) needs S up to {top}, profile has K={S.K}")
    return top


def t_of(S, N, variant="v2"):
    top = _span(S, N, variant)
    return int(S.S[1:top + 1].max())


def t_plus(S, N, variant="v2"):
    top = _span(S, N, variant)
    return int(S.S_plus[1:top + 1].max())


def l1_sum(S, N, variant="v2"):
    """``sum_{n<=m(N)} S+(n) / n``.

    Summed with :func:`math.fsum`, so the result is the correctly rounded
    value of the exact sum regardless of summation order or chunking.
    """
    top = _span(S, N, variant)
    sp = S.S_plus[1:top + 1]
    idx = np.flatnonzero(sp)
    if idx.size == 0:
        return 0.0
    return math.fsum((sp[idx] / (idx + 1)).tolist())


def abel_sides(P, K, x):
    """Both sides of the summation-by-parts identity, in exact rationals.

    Returns ``(sum_{k<=K} (R2(2k)-R2(2k+1)) x^k,
    (1-x) sum_{k<K} S(k) x^k + S(K) x^K)``.
    """
    x = Fraction(x)
    S = s_profile(P, K).S
    lhs = Fraction(0)
    rhs = Fraction(0)
    xk = Fraction(1)
    for k in range(1, K + 1):
        xk *= x
        lhs += int(P.R2[2 * k] - P.R2[2 * k + 1]) * xk
        if k < K:
            rhs += int(S[k]) * xk
    rhs = (1 - x) * rhs + int(S[K]) * xk if K >= 1 else Fraction(0)
    return lhs, rhs


def write_sums_csv(S, path, upto=None):
    top = S.K if upto is None else min(upto, S.K)
    with open(path, "w", newline="") as fh:
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(["k", "S", "S_plus"])
        for k in range(1, top + 1):
            w.writerow([k, int(S.S[k]), int(S.S_plus[k])])
