"""Sidon-set generators and the dense-monotonicity construction for R1.

Take an even Sidon set ``B``, let ``A`` be the positive integers outside
``B``, ``Y = (B + B) ∪ B`` and ``X = [1, N_max] \\ Y``.  Then
``R1(A, n+1) >= R1(A, n)`` for every ``n`` in ``X``, and ``X`` has density
one when ``B`` is sparse (powers of two, for instance).

The reason is the coefficient formula for ``(1 - z) f(z)^2`` with
``f = z/(1-z) - g_B``: the coefficient of ``z^(n+1)`` is
``1 + r1(n+1) - r1(n) - 2 chi_B(n)`` (``n >= 1``), which is at least 1
whenever ``n`` is neither in ``B`` nor in ``B + B``.
"""

from dataclasses import dataclass

import numpy as np

from .errors import CapacityError, ConstructionError, DomainError, OutOfBoundError
from .repfuncs import r1_over, rep_profiles
from .sequences import IntegerSequence, complement, density_in, sumset

__all__ = [
    "greedy_sidon",
    "greedy_sidon_upto",
    "powers_of_two",
    "double_sequence",
    "is_sidon",
    "SarkozyInstance",
    "build_instance",
    "monotonicity_violations",
    "r1_violations",
    "coefficient_identity_residuals",
    "coefficient_identity_check",
    "instance_summary",
]


def _greedy(cap, count=None):
    # c is admissible iff c - a is a new difference for every earlier a,
    # i.e. c avoids {a + d : a in terms, d in differences}.
    forbidden = np.zeros(cap + 2, dtype=bool)
    terms = []
    diffs = []
    c = 1
    while c <= cap:
        if forbidden[c]:
            c += 1
            continue
        prev = np.asarray(terms, dtype=np.int64)
        new_d = c - prev
        if diffs:
            d_all = np.concatenate([np.asarray(diffs, dtype=np.int64), new_d])
        else:
            d_all = new_d
        # new term plus every difference, and every old term plus the new differences
        hits = np.concatenate([c + d_all, np.add.outer(prev, new_d).ravel()])
        hits = hits[hits <= cap]
        forbidden[hits] = True
        terms.append(c)
        diffs.extend(new_d.tolist())
        if count is not None and len(terms) == count:
            break
        c += 1
    return terms


def greedy_sidon(count, cap):
    """First ``count`` terms of the lexicographically least Sidon sequence starting at 1."""
    if count < 1:
        raise DomainError(f"count must be >= 1, got {count}")
    terms = _greedy(cap, count)
    if len(terms) < count:
        raise CapacityError(f"only {len(terms)} greedy Sidon terms fit below cap {cap}")
    return IntegerSequence(terms, cap)


def greedy_sidon_upto(cap):
    """Every term of the greedy Sidon sequence not exceeding ``cap``."""
    return IntegerSequence(_greedy(cap), cap)


def powers_of_two(cap):
    """``{2, 4, 8, ...} ∩ [1, cap]``."""
    if cap < 2:
        raise DomainError(f"cap must be >= 2, got {cap}")
    return IntegerSequence([1 << m for m in range(1, cap.bit_length()) if (1 << m) <= cap], cap)


def double_sequence(S):
    """``{2s : s in S}``; keeps the Sidon property and makes every element even."""
    return S.scaled(2)


def is_sidon(B):
    """Definition-level test: ``R2 <= 1`` over the finite set ``B`` (up to ``2 max B``)."""
    if len(B) == 0:
        return True
    top = 2 * B.max
    finite = B.as_complete(max(top, B.bound))
    return bool(rep_profiles(finite, top).R2.max() <= 1)


@dataclass(frozen=True)
class SarkozyInstance:
    B: IntegerSequence
    A: IntegerSequence
    Y: IntegerSequence
    X: IntegerSequence
    N_max: int


def build_instance(B, N_max):
    """Assemble ``A``, ``Y`` and ``X`` from an even Sidon set ``B`` up to ``N_max``."""
    if B.bound < N_max:
        raise OutOfBoundError(f"B is known up to {B.bound}, instance needs {N_max}")
    Bn = B.restrict(N_max)
    if np.any(Bn.elements % 2):
        raise ConstructionError("B must consist of even integers")
    if not is_sidon(Bn):
        raise ConstructionError("B is not a Sidon set")
    A = complement(Bn, N_max)
    BB = sumset(Bn, Bn, N_max)
    Y = IntegerSequence(np.union1d(BB.elements, Bn.elements), N_max)
    X = complement(Y, N_max)
    return SarkozyInstance(B=Bn, A=A, Y=Y, X=X, N_max=N_max)


def r1_violations(A, X, N):
    """All ``n in X ∩ [1, N]`` with ``R1(A, n+1) < R1(A, n)``."""
    if N + 1 > A.bound:
        raise OutOfBoundError(f"checking up to n={N} needs R1 up to {N + 1}; bound is {A.bound}")
    if N > X.bound:
        raise OutOfBoundError(f"X is known up to {X.bound}, asked for {N}")
    R1 = rep_profiles(A, N + 1).R1
    xs = X.elements[(X.elements >= 1) & (X.elements <= N)]
    bad = xs[R1[xs + 1] < R1[xs]]
    return [int(n) for n in bad]


def monotonicity_violations(inst, N):
    """Points of ``X`` up to ``N`` where ``R1(A, .)`` drops; the construction predicts none."""
    if N + 1 > inst.N_max:
        raise OutOfBoundError(f"need N + 1 <= N_max={inst.N_max}, got N={N}")
    return r1_violations(inst.A, inst.X, N)


def coefficient_identity_residuals(B, K):
    """Residuals of the closed formulas for the R1 increments of ``A = N \\ B``.

    For ``1 <= k <= K`` returns two integer arrays (even and odd case):
    ``R1(2k) - R1(2k-1) - (1 + r1(2k) - r1(2k-1) - 2 chi_B(2k-1))`` and
    ``R1(2k+1) - R1(2k) - (1 + r1(2k+1) - r1(2k) - 2 chi_B(2k))``.
    """
    if 2 * K + 1 > B.bound:
        raise OutOfBoundError(f"k <= {K} needs B up to {2 * K + 1}; bound is {B.bound}")
    Bt = B.restrict(2 * K + 1)
    if np.any(Bt.elements % 2):
        raise ConstructionError("B must consist of even integers")
    if not is_sidon(Bt):
        raise ConstructionError("B is not a Sidon set")
    top = 2 * K + 1
    A = complement(Bt, top)
    R1 = rep_profiles(A, top).R1
    r1 = r1_over(Bt, top)
    chi = Bt.indicator.astype(np.int64)
    k = np.arange(1, K + 1)
    even = (R1[2 * k] - R1[2 * k - 1]) - (1 + r1[2 * k] - r1[2 * k - 1] - 2 * chi[2 * k - 1])
    odd = (R1[2 * k + 1] - R1[2 * k]) - (1 + r1[2 * k + 1] - r1[2 * k] - 2 * chi[2 * k])
    return even, odd


def coefficient_identity_check(B, K):
    """Maximum absolute residual of both increment formulas for ``k <= K``; 0 when they hold."""
    if K < 1:
        return 0
    even, odd = coefficient_identity_residuals(B, K)
    return int(max(np.abs(even).max(), np.abs(odd).max()))


def instance_summary(inst, N=None):
    """Sizes, density of ``X`` and the violation list, as plain JSON-ready data."""
    N = inst.N_max - 1 if N is None else N
    dens = density_in(inst.X, inst.N_max)
    b = len(inst.B)
    return {
        "N_max": inst.N_max,
        "sizes": {"B": b, "A": len(inst.A), "Y": len(inst.Y), "X": len(inst.X)},
        "density_X": dens.ratio,
        "density_bound": 1.0 - (b * b + b) / inst.N_max,
        "complement_of_A_size": inst.N_max - len(inst.A),
        "violations_checked_up_to": N,
        "violations": monotonicity_violations(inst, N),
    }
