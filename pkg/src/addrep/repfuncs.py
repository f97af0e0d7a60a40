"""Representation functions R1, R2, R3 of a sequence.

``R1(n)`` counts ordered pairs ``(a, b)`` with ``a + b = n``, ``R2(n)`` the
unordered ones with repetition (``a <= b``) and ``R3(n)`` those with
``a < b``.  The fast path convolves the characteristic vector once and
derives R2/R3 from R1 and the diagonal indicator; :func:`naive_profiles`
enumerates pairs directly and serves as the oracle.
"""

import csv
from dataclasses import dataclass

import numpy as np

from .convolution import self_convolve_indicator
from .errors import OutOfBoundError

__all__ = ["RepProfile", "rep_profiles", "naive_profiles", "r1_over", "write_profile_csv"]


@dataclass(frozen=True, eq=False)
class RepProfile:
    N: int
    R1: np.ndarray
    R2: np.ndarray
    R3: np.ndarray

    def __eq__(self, other):
        if not isinstance(other, RepProfile):
            return NotImplemented
        return (self.N == other.N and np.array_equal(self.R1, other.R1)
                and np.array_equal(self.R2, other.R2) and np.array_equal(self.R3, other.R3))

    def truncated(self, N):
        if N > self.N:
            raise OutOfBoundError(f"profile has length {self.N}, asked for {N}")
        return RepProfile(N, self.R1[: N + 1], self.R2[: N + 1], self.R3[: N + 1])


def _check_range(A, N):
    if N < 0:
        raise OutOfBoundError(f"profile length must be non-negative, got {N}")
    if N > A.bound:
        raise OutOfBoundError(
            f"profile up to {N} is not exact for a sequence known only up to {A.bound}")


def _diagonal(A, N):
    diag = np.zeros(N + 1, dtype=np.int64)
    halves = A.elements[2 * A.elements <= N]
    diag[2 * halves] = 1
    return diag


def _readonly(*arrays):
    for a in arrays:
        a.setflags(write=False)


def rep_profiles(A, N):
    """Exact ``R1, R2, R3`` on ``0..N`` for ``N <= A.bound``.

    Results are cached on the sequence; a later request for a shorter
    profile is served by slicing.
    """
    _check_range(A, N)
    cached = A._cache.get("rep_profile")
    if cached is not None and cached.N >= N:
        return cached if cached.N == N else cached.truncated(N)
    R1 = self_convolve_indicator(A.indicator, N)
    diag = _diagonal(A, N)
    R3 = (R1 - diag) // 2
    R2 = R3 + diag
    _readonly(R1, R2, R3)
    prof = RepProfile(N, R1, R2, R3)
    A._cache["rep_profile"] = prof
    return prof


def naive_profiles(A, N):
    """Pair-enumeration oracle for :func:`rep_profiles` (intended for small sets).

    Each of R1, R2, R3 is counted from its own definition; none is derived
    from another.
    """
    _check_range(A, N)
    el = A.elements[A.elements <= N]
    R1 = np.zeros(N + 1, dtype=np.int64)
    R2 = np.zeros(N + 1, dtype=np.int64)
    R3 = np.zeros(N + 1, dtype=np.int64)
    for i, a in enumerate(el):
        k = np.searchsorted(el, N - a, side="right")
        # within one i the sums a + el[j] are distinct, so plain fancy-index += is safe
        R1[a + el[:k]] += 1
        if i < k:
            R2[a + el[i:k]] += 1
            R3[a + el[i + 1:k]] += 1
    return RepProfile(N, R1, R2, R3)


def r1_over(B, N):
    """Ordered-pair counts ``r1(n) = #{(b, b') in B^2 : b + b' = n}`` for ``n <= N``.

    Suited to sparse ``B`` (Sidon sets): sums are enumerated and tallied.
    Dense inputs fall back to the convolution path.
    """
    _check_range(B, N)
    el = B.elements[B.elements <= N]
    if el.size * el.size > 20_000_000:
        return rep_profiles(B, N).R1.copy()
    sums = np.add.outer(el, el).ravel()
    sums = sums[sums <= N]
    return np.bincount(sums, minlength=N + 1).astype(np.int64)


def write_profile_csv(profile, path):
    with open(path, "w", newline="") as fh:
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(["n", "R1", "R2", "R3"])
        for n in range(profile.N + 1):
            w.writerow([n, int(profile.R1[n]), int(profile.R2[n]), int(profile.R3[n])])
