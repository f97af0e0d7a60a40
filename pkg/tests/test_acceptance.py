"""Acceptance criteria 1-12, each at its stated tolerance and time limit.

Every test prints one line ``ACCEPTANCE <n> PASS|FAIL <title>`` (visible
with ``pytest -s`` or in the captured output of ``pytest -v``).
"""

import json
import math
import time
from contextlib import contextmanager
from fractions import Fraction

import numpy as np
import pytest

from addrep.analytic import (
    dyadic_sum,
    g_of,
    g_two_ways,
    h_cascade,
    h_cascade_recurrence,
    identity28_check,
    ineq33_check,
    required_bound_for_g,
)
from addrep.constructions import (
    build_instance,
    coefficient_identity_check,
    double_sequence,
    greedy_sidon,
    greedy_sidon_upto,
    monotonicity_violations,
    powers_of_two,
)
from addrep.harness import bundle_json, build_family, run_experiment
from addrep.partial_sums import abel_sides, l1_sum, m_of, sum_profile_for, t_of
from addrep.repfuncs import naive_profiles, rep_profiles
from addrep.sequences import IntegerSequence, density_in

SEED = 12345


@contextmanager
def criterion(capsys, number, title):
    ok = False
    try:
        yield
        ok = True
    finally:
        with capsys.disabled():
            print(f"\nACCEPTANCE {number:2d} {'PASS' if ok else 'FAIL'} {title}")


def _random(rng, bound, lo=0.05, hi=0.95, positive=True):
    mask = rng.random(bound + 1) < rng.uniform(lo, hi)
    if positive:
        mask[0] = False
    return IntegerSequence(np.flatnonzero(mask), bound)


def test_01_oracle_equivalence(capsys):
    with criterion(capsys, 1, "rep_profiles == naive_profiles on 200 random sequences, < 60 s"):
        rng = np.random.default_rng(SEED)
        start = time.perf_counter()
        for _ in range(200):
            A = _random(rng, 2000, positive=False)
            fast = rep_profiles(A, 2000)
            slow = naive_profiles(A, 2000)
            assert np.array_equal(fast.R1, slow.R1)
            assert np.array_equal(fast.R2, slow.R2)
            assert np.array_equal(fast.R3, slow.R3)
        assert time.perf_counter() - start < 60


def test_02_full_set_closed_form(capsys):
    with criterion(capsys, 2, "full set {0..N}, N=10^4: R2 = floor(n/2)+1, S = 0, T = 0, l1 = 0"):
        N = 10_000
        # S and T at scale N reach up to m(N), so the interval is materialized that far
        top = 2 * m_of(N) + 1
        A = IntegerSequence.interval(0, top)
        R2 = rep_profiles(A, top).R2
        n = np.arange(top + 1)
        assert np.array_equal(R2[: N + 1], n[: N + 1] // 2 + 1)
        assert np.array_equal(R2, n // 2 + 1)
        S = sum_profile_for(A, m_of(N))
        assert not S.S.any()
        assert t_of(S, N) == 0
        assert l1_sum(S, N) == 0.0


def test_03_identity(capsys):
    with criterion(capsys, 3, "generating-function identity: residual 0 at D=4096 for 20 sequences, < 5 s"):
        rng = np.random.default_rng(SEED + 3)
        seqs = [_random(rng, 4096) for _ in range(20)]
        start = time.perf_counter()
        for A in seqs:
            assert identity28_check(A, 4096) == 0
        assert time.perf_counter() - start < 5


def test_04_dyadic_sum(capsys):
    with criterion(capsys, 4, "dyadic sum below 2x/(1-x) and x(1+x)/(1-x) on x = 0.01..0.99, tol 1e-12"):
        for i in range(1, 100):
            x = i / 100
            s = dyadic_sum(x)
            assert s <= 2 * x / (1 - x) + 1e-12
            assert s <= x * (1 + x) / (1 - x) + 1e-12


def test_05_doubling_inequality(capsys):
    with criterion(capsys, 5, "psi(Y)^2 + Y g(Y) - 2Y psi(Y/2) >= -1e-6 on 50 sequences x Y in 20..200"):
        rng = np.random.default_rng(SEED + 5)
        for _ in range(50):
            A = _random(rng, 10_000)
            for Y in range(20, 201, 20):
                assert ineq33_check(A, float(Y)).value >= -1e-6


def test_06_lemma5a(capsys):
    with criterion(capsys, 6, "g(N) < 4T(N) + 40 on 10 random sequences and 2 families, tol 1e-6"):
        grid = [40, 100, 400, 2000, 10_000]
        # g at scale N needs S well past m(N); take whichever reach is larger
        bound = max(2 * m_of(10_000) + 1, required_bound_for_g(10_000))
        rng = np.random.default_rng(SEED + 6)
        seqs = [_random(rng, bound) for _ in range(10)]
        seqs += [build_family("complement-of-powers", bound),
                 build_family("complement-of-greedy-sidon", bound)]
        for A in seqs:
            for N in grid:
                g = g_of(A, N).value
                assert g < 4 * t_of(sum_profile_for(A, m_of(N)), N) + 40 + 1e-6


def test_07_sarkozy(capsys):
    with criterion(capsys, 7, "dense monotonicity: no violations, density >= 0.99, increments exact, < 30 s"):
        start = time.perf_counter()
        inst = build_instance(powers_of_two(1 << 17), 100_000)
        assert monotonicity_violations(inst, 99_999) == []
        assert density_in(inst.X, 100_000).ratio >= 0.99
        assert coefficient_identity_check(powers_of_two(1 << 17), 50_000) == 0
        assert time.perf_counter() - start < 30


def _greedy_brute(count):
    terms, sums, c = [], set(), 0
    while len(terms) < count:
        c += 1
        new = [c + t for t in terms] + [2 * c]
        if len(set(new)) == len(new) and not sums.intersection(new):
            terms.append(c)
            sums.update(new)
    return terms


def _r2_at_most_one(B):
    top = 2 * B.max
    P = naive_profiles(B.as_complete(max(top, B.bound)), top)
    return P.R2.max() <= 1


def test_08_sidon(capsys):
    with criterion(capsys, 8, "greedy Sidon matches brute force; generated sets have R2 <= 1"):
        assert greedy_sidon(10, 1000).elements.tolist() == _greedy_brute(10)
        for B in (greedy_sidon(10, 1000), greedy_sidon_upto(20_000), powers_of_two(1 << 17),
                  double_sequence(greedy_sidon_upto(20_000))):
            assert _r2_at_most_one(B)


def test_09_abel(capsys):
    with criterion(capsys, 9, "summation by parts exact at dyadic x; g two ways agree within err"):
        rng = np.random.default_rng(SEED + 9)
        for _ in range(20):
            A = _random(rng, 20_000)
            P = rep_profiles(A, 401)
            for x in (Fraction(1, 2), Fraction(1, 4), Fraction(3, 4)):
                lhs, rhs = abel_sides(P, 200, x)
                assert lhs == rhs
            for Y in (20.0, 100.0, 400.0):
                a, b = g_two_ways(A, Y)
                assert abs(a.value - b.value) <= a.err + b.err


def test_10_cascade(capsys):
    with criterion(capsys, 10, "cascade closed form vs recurrence, rel 1e-12, alpha <= 40"):
        A = _random(np.random.default_rng(SEED + 10), required_bound_for_g(4096))
        hs = {
            "constant": lambda y: 2.5,
            "linear": lambda y: 0.3 * y,
            "g-derived": lambda y: 2.3 * g_of(A, y).value / y,
        }
        for name, h in hs.items():
            for Y in (64.0, 1000.0, 4096.0):
                for alpha in range(41):
                    a = h_cascade(h, Y, alpha)
                    b = h_cascade_recurrence(h, Y, alpha)
                    assert abs(a - b) <= 1e-12 * max(abs(a), abs(b)), (name, Y, alpha)


def test_11_determinism(capsys):
    with criterion(capsys, 11, "run_experiment byte-identical across 3 reruns and threads {1, 4}"):
        cfg = {"family": "complement-of-powers", "N": 1024, "checks": ["all"]}
        outputs = {bundle_json(run_experiment(dict(cfg, threads=t))) for t in (1, 4, 1, 4, 1, 4)}
        assert len(outputs) == 1


def test_12_harness_completeness(capsys):
    with criterion(capsys, 12, "complement-of-powers at N=2^16: all variant slacks, < 2 min, stable calibration"):
        cfg = {"family": "complement-of-powers", "N": 1 << 16, "calibrate": True,
               "checks": ["theorem1", "corollaries", "lemma6_theorem2"]}
        start = time.perf_counter()
        first = run_experiment(cfg)
        assert time.perf_counter() - start < 120
        seen = {(r["check_id"], r["variant"]) for r in first["reports"]}
        assert {("theorem1", v) for v in ("v2", "v1", "log2")} <= seen
        assert {("corollary1", "v2"), ("corollary1", "v1"), ("corollary2", "v1"),
                ("corollary3", "trend"), ("lemma6", "v2"), ("theorem2", "v2")} <= seen
        for r in first["reports"]:
            assert r["slack"] == r["lhs"] - r["rhs"] and math.isfinite(r["slack"])
        assert {"theorem1_c1", "theorem2_c"} <= set(first["calibration"])
        second = run_experiment(cfg)
        assert json.dumps(first["calibration"], sort_keys=True) == json.dumps(second["calibration"], sort_keys=True)
        assert bundle_json(first) == bundle_json(second)
