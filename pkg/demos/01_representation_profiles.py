"""Representation counts and the monotonicity defect of a few sequences.

Run: python3 demos/01_representation_profiles.py
"""

import numpy as np

from addrep.harness import build_family
from addrep.partial_sums import l1_sum, m_of, sum_profile_for, t_of
from addrep.repfuncs import rep_profiles
from addrep.sequences import IntegerSequence, counting_function

# %% The full set of positive integers: R2(n) = floor(n/2), so even and odd
# counts agree and the defect S_k is identically zero.
N = 1024
top = 2 * m_of(N) + 1
full = IntegerSequence.interval(1, top)
P = rep_profiles(full, 20)
print("R2 of the positive integers, n = 0..20:", P.R2.tolist())
S = sum_profile_for(full, m_of(N))
print(f"T({N}) = {t_of(S, N)}, L1 sum = {l1_sum(S, N)}")

# %% Remove the powers of two.  Each missing 2^m knocks one representation
# out of many even numbers, and the defect drifts upward.
A = build_family("complement-of-powers", top)
S = sum_profile_for(A, m_of(N))
print(f"\npositive integers without powers of two, N = {N}")
print(f"  A(N) = {counting_function(A, N)}, N - A(N) = {N - counting_function(A, N)}")
print(f"  T(N) = {t_of(S, N)}  (compare A(N)/36 = {counting_function(A, N) / 36:.2f})")
print(f"  L1 sum = {l1_sum(S, N):.4f}")
for n in (3, 10, 100, 1000, m_of(N)):
    print(f"  S({n}) = {S.S[n]}")

# %% A random half-density set: the defect wanders like a random walk.
rng = np.random.default_rng(7)
R = IntegerSequence(np.flatnonzero(rng.random(top + 1) < 0.5)[1:], top)
S = sum_profile_for(R, m_of(N))
print(f"\nrandom density-1/2 set: T({N}) = {t_of(S, N)}, min S = {S.S[1:m_of(N) + 1].min()}")
