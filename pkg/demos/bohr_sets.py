#!/usr/bin/env python3
"""Bohr sets in Z/pZ: enumeration, dilates, scaling, exact regularity,
and the size lower bound under dilation.

Bohr(Gamma, rho) collects the x where every character gamma_t, t in Gamma,
stays within rho of 1.  These sets stand in for subgroups: symmetric,
containing 0, and well behaved under dilation once a regular width is
chosen.
"""

import numpy as np

from invariant_eq_lab import (
    BohrSet,
    PrimeCyclicGroup,
    dilate,
    enumerate_members,
    find_regular_dilate,
    is_regular,
    scale,
    size_bound_check,
)

BAR = "-" * 64

g = PrimeCyclicGroup(13)
B = BohrSet(g, (1,), 1.0)

print(BAR)
print("1. Membership and structure at p=13, Gamma={1}, rho=1")
print(BAR)
members = enumerate_members(B)
print(f"members: {members.elements}")
print("0 is always a member; the set is symmetric about 0")

print()
print(BAR)
print("2. Dilates shrink the width, scaling moves frequencies")
print(BAR)
half = dilate(B, 0.5)
print(f"B_0.5 members: {enumerate_members(half).elements}")
tripled = scale(B, 3)
print(f"3*B members : {enumerate_members(tripled).elements} (elementwise 3 * members)")
print(f"3*B keeps dimension {tripled.dimension} and width {tripled.width}")

print()
print(BAR)
print("3. Exact regularity: |B_(1+delta)|/|B| inside 1 +- 12 d |delta|")
print(BAR)
report = is_regular(B)
print(f"regular: {report.is_regular}  worst violation: {report.worst_ratio_violation:.4f}")
wide = BohrSet(g, (1,), 2.0)
wide_report = is_regular(wide)
print(
    f"width 2 at p=13: regular={wide_report.is_regular} "
    f"(two points of radius 2cos(pi/26) sit just under the boundary)"
)
delta = find_regular_dilate(wide)
print(f"find_regular_dilate rescues it: delta={delta:.4f} is regular")

print()
print(BAR)
print("4. Size never collapses faster than (delta/2)^(3d)")
print(BAR)
rng = np.random.default_rng(0)
for _ in range(4):
    p = int(rng.choice([101, 331, 1009]))
    freq = int(rng.integers(1, p))
    width = float(rng.uniform(0.3, 1.8))
    Br = BohrSet(PrimeCyclicGroup(p), (freq,), width)
    check = size_bound_check(Br, 0.3)
    print(
        f"p={p:5d} gamma={freq:4d} rho={width:.3f}: "
        f"|B_0.3|={check.dilate_size:4d} >= {check.lower_bound:8.3f}  holds={check.holds}"
    )
