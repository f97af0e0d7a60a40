"""Generating-function quantities at real scale ``Y``.

``psi(Y) = sum_{a in A} exp(-a/Y)`` and
``g(Y) = 1 + 4 (1 - q) sum_{k>=1} S(k) q^k`` with ``q = exp(-2/Y)``.

Every infinite sum is cut at an explicit index chosen from a closed-form
tail bound; the bound is returned as ``err`` and the index as
``params["cutoff"]``.  The tail bounds rely on ``|S(k)| <= k(k+3)/2``,
which holds for any set of non-negative integers because
``R2(2l), R2(2l+1) <= l + 1``.

Exact polynomial checks (the coefficient identity behind the doubling
inequality) use integer arithmetic only and widen to Python integers when
``int64`` could overflow.
"""

import math
from dataclasses import dataclass, field

import numpy as np

from .errors import DomainError, OutOfBoundError, PositivityError, TruncationError
from .partial_sums import sum_profile_for
from .repfuncs import rep_profiles

__all__ = [
    "AnalyticValue",
    "CoefficientSeries",
    "psi",
    "psi_cutoff",
    "g_of",
    "g_cutoff",
    "weighted_cutoff",
    "g_two_ways",
    "required_bound_for_g",
    "dyadic_sum",
    "h_cascade",
    "h_cascade_recurrence",
    "series_square",
    "identity28_residuals",
    "identity28_check",
    "ineq33_check",
    "doubling_exponent",
    "lemma2_rhs",
    "lemma3_constant",
    "lemma4_bound",
    "theorem2_exponent",
]

DEFAULT_TOL = 1e-9


@dataclass(frozen=True)
class AnalyticValue:
    value: float
    err: float
    params: dict = field(default_factory=dict)

    def __float__(self):
        return self.value


# ---------------------------------------------------------------- tail bounds


def _poly_exp_integral(coeffs, lam, K):
    """``∫_K^∞ (sum_j coeffs[j] x^j) exp(-lam x) dx`` in closed form."""
    total = 0.0
    for j, c in enumerate(coeffs):
        if c == 0:
            continue
        # ∫_K^∞ x^j e^{-λx} dx = e^{-λK} sum_{i<=j} j!/i! K^i / λ^{j-i+1}
        acc = 0.0
        for i in range(j + 1):
            acc += math.factorial(j) / math.factorial(i) * K ** i / lam ** (j - i + 1)
        total += c * acc
    return math.exp(-lam * K) * total


# S(k) envelope k(k+3)/2
_S_ENVELOPE = (0.0, 1.5, 0.5)
# |R2(2k) - R2(2k+1)| envelope k + 1
_D_ENVELOPE = (1.0, 1.0)


def _minimal_cutoff(tail, start, tol):
    """Smallest integer ``K >= start`` with ``tail(K) < tol`` (``tail`` non-increasing)."""
    hi = max(int(start), 1)
    if tail(hi) < tol:
        return hi
    lo = hi
    while tail(hi) >= tol:
        lo = hi
        hi *= 2
        if hi > 1 << 62:
            raise DomainError("no finite cutoff meets the tolerance")
    while hi - lo > 1:
        mid = (lo + hi) // 2
        if tail(mid) < tol:
            hi = mid
        else:
            lo = mid
    return hi


def _one_minus_q(Y):
    return -math.expm1(-2.0 / Y)


def _g_tail(Y, K):
    return 4.0 * _one_minus_q(Y) * _poly_exp_integral(_S_ENVELOPE, 2.0 / Y, K)


def _diff_tail(Y, K):
    return 4.0 * _poly_exp_integral(_D_ENVELOPE, 2.0 / Y, K)


def _weighted_tail(Y, K):
    # S+(k) w_k with w_k <= q^k / (1 - q)
    return _poly_exp_integral(_S_ENVELOPE, 2.0 / Y, K) / _one_minus_q(Y)


def _check_scale(Y, tol):
    if not Y > 0 or not math.isfinite(Y):
        raise DomainError(f"Y must be positive and finite, got {Y}")
    if not tol > 0:
        raise DomainError(f"tolerance must be positive, got {tol}")


def weighted_cutoff(Y, tol=DEFAULT_TOL):
    """Cutoff for sums of ``S+(k)`` against ``1 / (exp(2k/Y) - 1)``."""
    _check_scale(Y, tol)
    return _minimal_cutoff(lambda K: _weighted_tail(Y, K), math.ceil(Y), tol)


def g_cutoff(Y, tol=DEFAULT_TOL):
    """Smallest ``K >= Y`` whose tail bound for g is below ``tol``."""
    _check_scale(Y, tol)
    return _minimal_cutoff(lambda K: _g_tail(Y, K), math.ceil(Y), tol)


def required_bound_for_g(Y, tol=DEFAULT_TOL):
    return 2 * g_cutoff(Y, tol) + 1


# ---------------------------------------------------------------- psi


def _psi_tail(Y, K):
    # sum_{a > K} e^{-a/Y} <= e^{-(K+1)/Y} / (1 - e^{-1/Y})
    return math.exp(-(K + 1) / Y) / -math.expm1(-1.0 / Y)


def psi_cutoff(Y, tol=DEFAULT_TOL):
    _check_scale(Y, tol)
    guess = Y * math.log(1.0 / (tol * -math.expm1(-1.0 / Y))) - 1.0
    K = max(0, math.ceil(guess))
    while K > 0 and _psi_tail(Y, K - 1) < tol:
        K -= 1
    while _psi_tail(Y, K) >= tol:
        K += 1
    return K


def psi(A, Y, tol=DEFAULT_TOL):
    """``sum_{a in A} exp(-a/Y)`` over ``a <= cutoff`` plus a geometric tail bound."""
    _check_scale(Y, tol)
    if not A.is_positive:
        raise PositivityError("psi requires a sequence of positive integers (0 is present)")
    K = psi_cutoff(Y, tol)
    if K > A.bound:
        raise TruncationError(f"psi({Y}) to tolerance {tol} needs the sequence up to {K}; bound is {A.bound}")
    el = A.elements[A.elements <= K]
    value = math.fsum(np.exp(-el / Y).tolist())
    return AnalyticValue(value, _psi_tail(Y, K), {"Y": Y, "tol": tol, "cutoff": K})


# ---------------------------------------------------------------- g


def g_of(A, Y, tol=DEFAULT_TOL):
    """``1 + 4(1 - q) sum_k S(k) q^k``, ``q = exp(-2/Y)``, truncated with a certified tail."""
    K = g_cutoff(Y, tol)
    S = sum_profile_for(A, K).S[1:K + 1]
    weights = np.exp(-2.0 * np.arange(1, K + 1) / Y)
    nz = np.flatnonzero(S)
    inner = math.fsum((S[nz] * weights[nz]).tolist()) if nz.size else 0.0
    value = 1.0 + 4.0 * _one_minus_q(Y) * inner
    return AnalyticValue(value, _g_tail(Y, K), {"Y": Y, "tol": tol, "cutoff": K})


def g_two_ways(A, Y, tol=DEFAULT_TOL):
    """g via S-weighting and via direct R2-difference weighting.

    The two agree because ``sum_k (S_k - S_{k-1}) q^k = (1 - q) sum_k S_k q^k``.
    """
    first = g_of(A, Y, tol)
    _check_scale(Y, tol)
    K = _minimal_cutoff(lambda k: _diff_tail(Y, k), math.ceil(Y), tol)
    sum_profile_for(A, K)
    R2 = rep_profiles(A, 2 * K + 1).R2
    d = R2[2:2 * K + 1:2] - R2[3:2 * K + 2:2]
    weights = np.exp(-2.0 * np.arange(1, K + 1) / Y)
    nz = np.flatnonzero(d)
    inner = math.fsum((d[nz] * weights[nz]).tolist()) if nz.size else 0.0
    second = AnalyticValue(1.0 + 4.0 * inner, _diff_tail(Y, K), {"Y": Y, "tol": tol, "cutoff": K})
    return first, second


# ---------------------------------------------------------------- dyadic sum & cascade


def dyadic_sum(x, tol=1e-17):
    """``sum_{n>=0} 2^n x^(2^n)`` for ``0 < x < 1``.

    Terms are added until the next one is below ``tol`` and the terms are
    already shrinking by more than half per step.
    """
    if not 0.0 < x < 1.0:
        raise DomainError(f"dyadic_sum needs 0 < x < 1, got {x}")
    terms = []
    power = x
    weight = 1.0
    while True:
        term = weight * power
        if term < tol and 2.0 * power < 0.5:
            break
        terms.append(term)
        power *= power
        weight *= 2.0
    return math.fsum(terms)


def h_cascade(h, Y, alpha):
    """``H(Y; alpha) = sum_{j<alpha} h(Y / 2^j) / 2^(j+1)``; ``H(Y; 0) = 0``."""
    if alpha < 0:
        raise DomainError(f"alpha must be >= 0, got {alpha}")
    return math.fsum(h(Y / 2.0 ** j) / 2.0 ** (j + 1) for j in range(alpha))


def h_cascade_recurrence(h, Y, alpha):
    """Same quantity through ``F(y, b+1) = (h(y 2^(b+1)) + F(y, b)) / 2`` with ``y = Y / 2^alpha``."""
    if alpha < 0:
        raise DomainError(f"alpha must be >= 0, got {alpha}")
    y = Y / 2.0 ** alpha
    F = 0.0
    for b in range(alpha):
        F = (h(y * 2.0 ** (b + 1)) + F) / 2.0
    return F


# ---------------------------------------------------------------- exact series


@dataclass(frozen=True)
class CoefficientSeries:
    """Exact integer power series truncated at ``degree``."""

    degree: int
    coeffs: tuple

    def __init__(self, coeffs, degree=None):
        cs = tuple(int(c) for c in coeffs)
        if degree is None:
            degree = len(cs) - 1
        cs = (cs + (0,) * (degree + 1 - len(cs)))[: degree + 1]
        object.__setattr__(self, "degree", int(degree))
        object.__setattr__(self, "coeffs", cs)

    @classmethod
    def of_sequence(cls, A, degree):
        """``f(z) = sum_{a in A} z^a`` truncated at ``degree``."""
        if degree > A.bound:
            raise OutOfBoundError(f"series to degree {degree} needs the sequence up to {degree}")
        return cls(A.indicator[: degree + 1].astype(np.int64).tolist(), degree)

    def alternated(self):
        """Coefficients of ``f(-z)``."""
        return CoefficientSeries([-c if n & 1 else c for n, c in enumerate(self.coeffs)], self.degree)

    def __getitem__(self, n):
        return self.coeffs[n]


def _pack_kronecker(values, nbytes):
    return int.from_bytes(b"".join(v.to_bytes(nbytes, "little") for v in values), "little")


def _unpack_kronecker(number, nbytes, count):
    raw = number.to_bytes(nbytes * count + nbytes, "little")
    return [int.from_bytes(raw[i * nbytes:(i + 1) * nbytes], "little") for i in range(count)]


def _kronecker_product(a, b, count):
    """Truncated product of non-negative integer lists via one big-integer multiply."""
    ma = max(a, default=0)
    mb = max(b, default=0)
    if ma == 0 or mb == 0:
        return [0] * count
    bits = ma.bit_length() + mb.bit_length() + max(len(a), len(b)).bit_length() + 1
    nbytes = (bits + 7) // 8
    prod = _pack_kronecker(a, nbytes) * _pack_kronecker(b, nbytes)
    full = _unpack_kronecker(prod, nbytes, len(a) + len(b))
    return full[:count]


def series_square(f):
    """Exact square of ``f`` truncated at ``f.degree``.

    Uses ``int64`` convolution when the a-priori coefficient bound fits,
    otherwise Kronecker substitution on Python integers; never wraps.
    """
    D = f.degree
    c = f.coeffs
    big = max((abs(x) for x in c), default=0)
    if big * big * (D + 1) < (1 << 62):
        arr = np.asarray(c, dtype=np.int64)
        out = np.convolve(arr, arr)[: D + 1]
        return CoefficientSeries(out.tolist(), D)
    pos = [x if x > 0 else 0 for x in c]
    neg = [-x if x < 0 else 0 for x in c]
    pp = _kronecker_product(pos, pos, D + 1)
    nn = _kronecker_product(neg, neg, D + 1)
    pn = _kronecker_product(pos, neg, D + 1)
    return CoefficientSeries([p + n - 2 * m for p, n, m in zip(pp, nn, pn)], D)


def identity28_residuals(A, D):
    """Coefficientwise ``LHS - RHS`` of

    ``2z f(z^2) = (1-z) f(z)^2 + 4z sum_{k>=1} (R2(2k)-R2(2k+1)) z^{2k} - (1+z) f(-z)^2``

    truncated at degree ``D``, as a list of Python integers.
    """
    if not A.is_positive:
        raise PositivityError(
            "the identity omits the k=0 term 2(R2(0)-R2(1)), which is non-zero when 0 is in A")
    if D > A.bound:
        raise OutOfBoundError(f"degree {D} exceeds the sequence bound {A.bound}")
    f = CoefficientSeries.of_sequence(A, D)
    sq = series_square(f).coeffs
    sq_alt = series_square(f.alternated()).coeffs
    R2 = rep_profiles(A, D).R2 if D >= 0 else None
    out = []
    for n in range(D + 1):
        lhs = 2 * f.coeffs[(n - 1) // 2] if n % 2 == 1 else 0
        rhs = sq[n] - (sq[n - 1] if n >= 1 else 0)
        rhs -= sq_alt[n] + (sq_alt[n - 1] if n >= 1 else 0)
        if n % 2 == 1 and n >= 3:
            k = (n - 1) // 2
            rhs += 4 * (int(R2[2 * k]) - int(R2[2 * k + 1]))
        out.append(lhs - rhs)
    return out


def identity28_check(A, D):
    """Maximum absolute coefficient residual of the identity above; 0 when it holds."""
    return max((abs(r) for r in identity28_residuals(A, D)), default=0)


# ---------------------------------------------------------------- inequalities


def ineq33_check(A, Y, tol=DEFAULT_TOL):
    """Slack ``psi(Y)^2 + Y g(Y) - 2Y psi(Y/2)`` with its propagated truncation error."""
    p = psi(A, Y, tol)
    p2 = psi(A, Y / 2.0, tol)
    g = g_of(A, Y, tol)
    slack = p.value ** 2 + Y * g.value - 2.0 * Y * p2.value
    err = 2.0 * p.value * p.err + p.err ** 2 + Y * g.err + 2.0 * Y * p2.err
    return AnalyticValue(slack, err, {
        "Y": Y, "tol": tol, "psi": p.value, "psi_half": p2.value, "g": g.value,
        "cutoff_psi": p.params["cutoff"], "cutoff_g": g.params["cutoff"],
    })


def doubling_exponent(A, Y, tol=DEFAULT_TOL):
    """Smallest ``h`` with ``psi(Y)^2 >= 2Y exp(-h) psi(Y/2)``, i.e. ``ln(2Y psi(Y/2) / psi(Y)^2)``."""
    p = psi(A, Y, tol)
    p2 = psi(A, Y / 2.0, tol)
    if p.value <= 0 or p2.value <= 0:
        raise DomainError(f"psi vanishes numerically at Y={Y}")
    return math.log(2.0 * Y * p2.value) - 2.0 * math.log(p.value)


def lemma2_rhs(A, Y, alpha, h, tol=DEFAULT_TOL):
    """``Y exp(-H(Y; alpha)) (psi(Y / 2^alpha) 2^alpha / Y)^(1 / 2^alpha)``."""
    base = psi(A, Y / 2.0 ** alpha, tol).value * 2.0 ** alpha / Y
    return Y * math.exp(-h_cascade(h, Y, alpha)) * base ** (1.0 / 2.0 ** alpha)


def lemma3_constant(A, Y, tol=DEFAULT_TOL):
    """Smallest ``c`` such that some ``alpha <= log2 Y`` has
    ``(psi(Y/2^alpha) 2^alpha / Y)^(1/2^alpha) >= exp(-c/Y)``.

    Returns ``(c, alpha)``.
    """
    if Y < 1:
        raise DomainError(f"Y must be >= 1, got {Y}")
    best = None
    for alpha in range(int(math.floor(math.log2(Y))) + 1):
        y0 = Y / 2.0 ** alpha
        p = psi(A, y0, tol).value
        if p <= 0:
            continue
        c = -y0 * math.log(p / y0)
        if best is None or c < best[0]:
            best = (c, alpha)
    if best is None:
        raise DomainError(f"psi vanishes at every scale Y/2^alpha for Y={Y}")
    return best


def _weighted_positive_sum(A, Y, tol, weight):
    K = weighted_cutoff(Y, tol)
    Sp = sum_profile_for(A, K).S_plus[1:K + 1]
    nz = np.flatnonzero(Sp)
    if nz.size == 0:
        return 0.0, _weighted_tail(Y, K), K
    w = weight(nz + 1)
    return math.fsum((Sp[nz] * w).tolist()), _weighted_tail(Y, K), K


def lemma4_bound(A, Y, alpha, d, tol=DEFAULT_TOL):
    """Upper bound ``(d/2Y)(alpha + (8/Y) sum_k S+(k) 2x^k / (1 - x^k))``, ``x = exp(-2/Y)``,
    for the cascade of ``h(Y) = d g(Y) / Y``."""
    total, err, K = _weighted_positive_sum(A, Y, tol, lambda k: 2.0 / np.expm1(2.0 * k / Y))
    scale = d / (2.0 * Y)
    # the weight 2x^k/(1-x^k) is twice the one in _weighted_tail
    return AnalyticValue(scale * (alpha + 8.0 / Y * total), scale * 8.0 / Y * 2.0 * err,
                         {"Y": Y, "alpha": alpha, "d": d, "cutoff": K})


def theorem2_exponent(A, Y, tol=DEFAULT_TOL):
    """``(2.3 / 2Y) (log2 Y + (16/Y) sum_k S+(k) e^{-2k/Y} / (1 - e^{-2k/Y}))``."""
    total, err, K = _weighted_positive_sum(A, Y, tol, lambda k: 1.0 / np.expm1(2.0 * k / Y))
    scale = 2.3 / (2.0 * Y)
    value = scale * (math.log2(Y) + 16.0 / Y * total)
    return AnalyticValue(value, scale * 16.0 / Y * err, {"Y": Y, "cutoff": K, "weighted_sum": total})
