#!/usr/bin/env python3
"""The digit-sphere extremal construction: dense sets with abnormally few
solutions to x_1 + ... + x_{k-1} = (k-1) x_k.

Constrain the d low-order base-M digits below M/k so sums of k members
never carry, then keep one sphere ||digits||^2 = r.  Any solution forces
the digit vectors onto a sphere average, which convexity only allows when
they all coincide; off the constrained digits the k-2 free digit slots are
the only freedom, so the count stays below |A| M^(d'(k-2)).
"""

from invariant_eq_lab import (
    BehrendParams,
    build_behrend,
    choose_params,
    digit_map,
    verify_behrend,
)

BAR = "-" * 64

print(BAR)
print("1. Reference instance M=5, d=2, d'=1, k=4")
print(BAR)
params = BehrendParams(5, 2, 1, 4)
out = build_behrend(params)
print(f"N = {out.N}, survivor pool |T| = {out.T_size}, chosen sphere r = {out.r}")
print(f"A (0-based) = {out.members}")
print(f"digit vectors: {[digit_map(x, 5, 2) for x in out.members[:5]]} ...")
v = verify_behrend(out, params)
print(f"solutions = {v.count} <= bound {v.bound}, diagonal property: {v.diagonal_ok}")
print(f"density {out.density():.4f} with only {v.count}/{out.N}^3 = "
      f"{v.count / out.N**3:.2e} of the solution space")

print()
print(BAR)
print("2. A larger instance, verified by exact convolution counting")
print(BAR)
params2 = BehrendParams(8, 3, 2, 4)
out2 = build_behrend(params2)
v2 = verify_behrend(out2, params2)
print(f"N = {out2.N}, |A| = {len(out2.members)}, r = {out2.r}")
print(f"count = {v2.count} <= {v2.bound}, diagonal: {v2.diagonal_ok}")

print()
print(BAR)
print("3. Parameters from a target density")
print(BAR)
choice = choose_params(0.01, 4)
cp = choice.params
print(f"alpha=0.01, k=4 gives M={cp.M}, d={cp.d}, d'={cp.dprime}")
print(f"measured density {choice.measured_density:.4f} >= 0.01")
try:
    choose_params(0.5, 4)
except ValueError as exc:
    print(f"alpha=0.5 is unreachable: {exc}")
