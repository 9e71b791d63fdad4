#!/usr/bin/env python3
"""Counting solutions of invariant equations, two independent ways.

Walks through the basic pipeline: define an invariant equation, count its
solutions inside a set by brute force and by the convolution identity,
embed an integer interval problem into Z/pZ without changing the count,
and normalize counts the way result tables do.
"""

from invariant_eq_lab import (
    IntervalSet,
    InvariantEquation,
    PrimeCyclicGroup,
    ResidueSet,
    count_solutions_bruteforce,
    count_solutions_fast,
    embed_interval,
    has_nontrivial_solution,
    solution_density_report,
)

BAR = "-" * 64

print(BAR)
print("1. x + y = 2z inside {1,...,5}, viewed in Z/31")
print(BAR)
eq = InvariantEquation((1, 1, -2))
A = ResidueSet(PrimeCyclicGroup(31), (1, 2, 3, 4, 5))
brute = count_solutions_bruteforce(A, eq)
fast = count_solutions_fast(A, eq)
print(f"brute force : total={brute.total} trivial={brute.trivial} nontrivial={brute.nontrivial}")
print(f"convolution : total={fast.total}  (agree: {brute == fast})")
print("the 13 = 9 odd+odd and 4 even+even pairs, averaging inside the set")

print()
print(BAR)
print("2. Integer problems embed into Z/p without wraparound")
print(BAR)
eq4 = InvariantEquation((1, 1, 1, -3))
interval = IntervalSet(10, tuple(range(1, 11)))
group, image = embed_interval(interval, eq4)
print(f"sum |a_i| * N = 6 * 10 = 60, so p = {group.p}")
int_count = count_solutions_bruteforce(interval, eq4)
mod_count = count_solutions_bruteforce(image, eq4)
print(f"count over Z: {int_count.total}   count mod {group.p}: {mod_count.total}")

print()
print(BAR)
print("3. Normalized reports and nontrivial-solution detection")
print(BAR)
rep = solution_density_report(A, eq)
print(f"alpha={rep.alpha:.4f} total={rep.total} total/N^(k-1)={rep.normalized:.6f}")
print(f"has nontrivial solution: {has_nontrivial_solution(A, eq)} (e.g. 1 + 3 = 2*2)")
single = ResidueSet(PrimeCyclicGroup(31), (7,))
print(f"singleton set: nontrivial = {has_nontrivial_solution(single, eq)}")
