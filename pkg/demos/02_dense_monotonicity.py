"""R1 can be increasing on a set of density one even when A misses infinitely many integers.

Remove an even Sidon set B from the positive integers.  Outside of
(B + B) ∪ B the ordered-pair count R1 never drops.

Run: python3 demos/02_dense_monotonicity.py
"""

from addrep.constructions import (
    build_instance,
    coefficient_identity_check,
    double_sequence,
    greedy_sidon_upto,
    instance_summary,
    powers_of_two,
)
from addrep.repfuncs import rep_profiles

N_MAX = 100_000

for label, B in (("powers of two", powers_of_two(1 << 17)),
                 ("doubled greedy Sidon", double_sequence(greedy_sidon_upto(N_MAX)))):
    inst = build_instance(B, N_MAX)
    s = instance_summary(inst)
    print(f"B = {label}: |B| = {s['sizes']['B']}, |Y| = {s['sizes']['Y']}")
    print(f"  density of X up to {N_MAX}: {s['density_X']:.5f} (counting bound {s['density_bound']:.5f})")
    print(f"  drops of R1 on X: {len(s['violations'])}")
    R1 = rep_profiles(inst.A, N_MAX).R1
    drops = [n for n in range(1, N_MAX) if R1[n + 1] < R1[n]]
    print(f"  drops of R1 anywhere: {len(drops)}, first few at {drops[:6]}")
    print(f"  increment formula residual (k <= 5*10^4): {coefficient_identity_check(inst.B.as_complete(N_MAX + 1), 50_000)}")
