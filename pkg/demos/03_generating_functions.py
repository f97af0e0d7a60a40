"""Laplace weights, the correction term g and the doubling inequality.

Run: python3 demos/03_generating_functions.py
"""

import math

from addrep.analytic import (
    doubling_exponent,
    dyadic_sum,
    g_two_ways,
    h_cascade,
    identity28_check,
    ineq33_check,
    psi,
    required_bound_for_g,
)
from addrep.harness import build_family

Y_MAX = 400.0
A = build_family("complement-of-powers", required_bound_for_g(Y_MAX))

# %% The squared generating function satisfies an exact coefficient identity.
print("identity residual at degree 4096:", identity28_check(A, 4096))

# %% psi(Y) is a smoothed count; for the full set it is 1/(e^{1/Y} - 1) ~ Y - 1/2.
print(f"\n{'Y':>6} {'psi(Y)':>12} {'Y - 1/2':>10} {'g(Y)':>10} {'slack':>12} {'h*':>10}")
for Y in (25.0, 50.0, 100.0, 200.0, 400.0):
    p = psi(A, Y).value
    g_s, g_d = g_two_ways(A, Y)
    assert abs(g_s.value - g_d.value) <= g_s.err + g_d.err
    slack = ineq33_check(A, Y)
    print(f"{Y:6.0f} {p:12.4f} {Y - 0.5:10.1f} {g_s.value:10.4f} {slack.value:12.4f} "
          f"{doubling_exponent(A, Y):10.6f}")

# %% Halving repeatedly: the cascade accumulates the doubling exponent.
h = lambda y: doubling_exponent(A, y)  # noqa: E731
for alpha in (1, 3, 6):
    print(f"H({Y_MAX:.0f}; {alpha}) = {h_cascade(h, Y_MAX, alpha):.6f}")

# %% The dyadic sum sum 2^n x^(2^n) against its two bounds.
for x in (0.1, 0.5, 0.9, 0.99):
    print(f"x = {x}: sum = {dyadic_sum(x):.6f}, 2x/(1-x) = {2 * x / (1 - x):.4f}, "
          f"x(1+x)/(1-x) = {x * (1 + x) / (1 - x):.4f}")
print(f"sanity: psi of the full set at Y=10 is {1 / math.expm1(0.1):.10f}")
