#!/usr/bin/env python3
"""Almost-periods of convolutions and how they turn into density increments.

A shift t is an eps-almost-period of 1_A * 1_L when shifting by t moves the
convolution by at most eps |A| |L|^(1/q) in L_q.  The period set always
contains 0, is symmetric, and nearly adds: sums of periods are 2eps-periods.
When a whole Bohr set consists of almost-periods, a translate of A must be
dense inside it; that is the increment engine's one-step payoff.
"""

import math

from invariant_eq_lab import (
    BohrSet,
    PrimeCyclicGroup,
    ResidueSet,
    almost_periods,
    convolve,
    dilate_set,
    enumerate_members,
    increment_from_periods,
    indicator,
    normalized_indicator,
    shift_deviation,
    verify_bohr_periods,
)

BAR = "-" * 64

g = PrimeCyclicGroup(31)
A = enumerate_members(BohrSet(g, (1,), 2 * math.sin(3.5 * math.pi / 31)))
L = ResidueSet(g, (0, 1, 2))

print(BAR)
print("1. Shift deviations of 1_A * 1_L on Z/31")
print(BAR)
conv = convolve(indicator(A), indicator(L))
for t in (0, 1, 5, 15):
    dev = shift_deviation(conv, t, 1)
    print(f"t={t:2d}: ||conv(.+t) - conv||_1 = {dev:.1f}")

print()
print(BAR)
print("2. The eps-period set: 0 in it, symmetric, nearly additive")
print(BAR)
result = almost_periods(A, L, 0.25, 1)
print(f"eps=0.25, q=1 periods: {result.periods.elements}")
p = g.p
sym = set(result.periods.elements) == {(p - t) % p for t in result.periods.elements}
print(f"symmetric: {sym}")

print()
print(BAR)
print("3. A Bohr set of almost-periods, validated pointwise")
print(BAR)
candidate = BohrSet(g, (1,), 2 * math.sin(1.5 * math.pi / 31))
print(f"candidate members: {enumerate_members(candidate).elements}")
ok = verify_bohr_periods(candidate, [A], L, L, 2.0)
print(f"every member is a (coarse) almost-period: {ok}")

print()
print(BAR)
print("4. From periods to a dense translate")
print(BAR)
alpha = A.density()
f = normalized_indicator(dilate_set(A, -1))
eps = 0.3
# Bohr set small enough that all its members are sup-norm eps-periods of
# f * 1_A; the lemma then promises a translate of density 2 alpha (1-2 eps).
B = BohrSet(g, (1,), 2 * math.sin(1.5 * math.pi / 31))
x, density = increment_from_periods(f, A, B, eps)
print(f"alpha = {alpha:.4f}, promised floor = {2 * alpha * (1 - 2 * eps):.4f}")
print(f"translate x={x} achieves density {density:.4f} inside B")
