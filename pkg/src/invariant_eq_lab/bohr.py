"""Bohr sets in Z/pZ: membership, enumeration, dilates, scaling, and an
exact regularity test.

Bohr(Gamma, rho) = {x : |1 - gamma_t(x)| <= rho for all t in Gamma}, and
|1 - gamma_t(x)| = 2|sin(pi t x / p)| exactly.  Because the dilate size
|B_w| is a step function of the width w, jumping only at the finite set of
critical widths {2|sin(pi t x / p)|}, regularity can be decided exactly by
evaluating the defining inequalities at every critical point of the window
instead of sampling a grid.
"""

from __future__ import annotations

import functools
import math
from dataclasses import dataclass

import numpy as np

from .cyclic import PrimeCyclicGroup, ResidueSet
from .errors import InvariantViolation

#: Absolute tolerance on the sine comparison in membership tests.  Desk-scale
#: moduli keep distinct critical widths far apart relative to this.
MEMBERSHIP_TOL = 1e-12


@dataclass(frozen=True)
class BohrSet:
    """Frequency set, width, and the group they act on.

    ``clamped`` records that an over-dilation was truncated at the maximal
    meaningful width 2.
    """

    group: PrimeCyclicGroup
    frequencies: tuple[int, ...]
    width: float
    clamped: bool = False

    def __post_init__(self) -> None:
        freqs = tuple(sorted(set(int(t) for t in self.frequencies)))
        for t in freqs:
            if not 0 <= t < self.group.p:
                raise ValueError(f"frequency {t} outside [0, {self.group.p})")
        if not 0 < self.width <= 2:
            raise ValueError(f"width must lie in (0, 2], got {self.width}")
        object.__setattr__(self, "frequencies", freqs)

    @property
    def dimension(self) -> int:
        return len(self.frequencies)


@dataclass(frozen=True)
class RegularityReport:
    is_regular: bool
    worst_ratio_violation: float
    critical_deltas_checked: int


@dataclass(frozen=True)
class SizeBoundReport:
    dilate_size: int
    lower_bound: float
    holds: bool


@functools.lru_cache(maxsize=512)
def _radii(p: int, frequencies: tuple[int, ...]) -> np.ndarray:
    """r(x) = max_t 2|sin(pi t x / p)| for every x; zeros if no frequencies."""
    xs = np.arange(p)
    if not frequencies:
        r = np.zeros(p)
    else:
        r = np.zeros(p)
        for t in frequencies:
            np.maximum(r, 2.0 * np.abs(np.sin(math.pi * t * xs / p)), out=r)
    r.setflags(write=False)
    return r


def _sorted_radii(B: BohrSet) -> np.ndarray:
    r = np.sort(_radii(B.group.p, B.frequencies))
    return r


def _count_within(sorted_radii: np.ndarray, w: float) -> int:
    return int(np.searchsorted(sorted_radii, w + MEMBERSHIP_TOL, side="right"))


def membership(B: BohrSet, x: int) -> bool:
    p = B.group.p
    x %= p
    worst = max((2.0 * abs(math.sin(math.pi * t * x / p)) for t in B.frequencies), default=0.0)
    return worst <= B.width + MEMBERSHIP_TOL


def enumerate_members(B: BohrSet) -> ResidueSet:
    r = _radii(B.group.p, B.frequencies)
    xs = np.nonzero(r <= B.width + MEMBERSHIP_TOL)[0]
    return ResidueSet(B.group, tuple(int(x) for x in xs))


def size(B: BohrSet) -> int:
    return _count_within(_sorted_radii(B), B.width)


def dilate(B: BohrSet, delta: float) -> BohrSet:
    """Same frequencies, width scaled to rho * delta (clamped at 2)."""
    if delta <= 0:
        raise ValueError(f"dilation factor must be positive, got {delta}")
    w = B.width * delta
    clamped = w > 2.0
    return BohrSet(B.group, B.frequencies, min(w, 2.0), clamped=clamped or B.clamped)


def scale(B: BohrSet, a: int) -> BohrSet:
    """a * B, the Bohr set with frequencies multiplied by a^{-1} mod p.

    Members scale elementwise: enumerate(a * B) = a * enumerate(B).
    Dimension and width are unchanged.
    """
    p = B.group.p
    if a % p == 0:
        raise ValueError("scaling factor must be a unit mod p")
    inv = pow(a % p, -1, p)
    return BohrSet(B.group, tuple((t * inv) % p for t in B.frequencies), B.width, B.clamped)


def is_regular(B: BohrSet) -> RegularityReport:
    """Exact regularity test: 1 - 12 d |delta| <= |B_{1+delta}| / |B| <= 1 + 12 d |delta|
    for every |delta| <= 1/(12 d).

    The ratio is a right-continuous step function of delta, so it suffices
    to evaluate both inequalities at every critical delta in the window
    (both the inclusive count and its left limit) and at the endpoints.
    """
    d = B.dimension
    radii = _sorted_radii(B)
    base = _count_within(radii, B.width)
    if base < 1:
        raise ValueError("Bohr set is unexpectedly empty")
    if d == 0:
        return RegularityReport(True, 0.0, 0)
    window = 1.0 / (12 * d)

    def violation(delta: float, count: int) -> float:
        ratio = count / base
        bound = 12 * d * abs(delta)
        return max((1 - bound) - ratio, ratio - (1 + bound))

    lo_w, hi_w = B.width * (1 - window), B.width * (1 + window)
    candidates: list[tuple[float, int]] = [
        (-window, _count_within(radii, lo_w)),
        (window, _count_within(radii, hi_w)),
    ]
    uniq = np.unique(radii)
    inside = uniq[(uniq >= lo_w - MEMBERSHIP_TOL) & (uniq <= hi_w + MEMBERSHIP_TOL)]
    for w in inside:
        delta = float(w / B.width - 1.0)
        if abs(delta) > window:
            continue
        candidates.append((delta, _count_within(radii, float(w))))
        # Left limit: points within tolerance of w not yet included.
        below = int(np.searchsorted(radii, w - MEMBERSHIP_TOL, side="right"))
        candidates.append((delta, below))
    worst = max(violation(delta, count) for delta, count in candidates)
    checked = len({delta for delta, _ in candidates})
    return RegularityReport(worst <= 0.0, worst, checked)


def find_regular_dilate(B: BohrSet) -> float:
    """A delta in [1/2, 1] whose dilate is regular.

    Scans candidate widths midway between consecutive critical widths,
    descending from 1; existence is guaranteed, so exhausting the scan
    signals a bug or a tolerance problem.
    """
    if B.dimension == 0:
        return 1.0
    radii = np.unique(_sorted_radii(B))
    deltas = radii / B.width
    inside = sorted(float(x) for x in deltas[(deltas >= 0.5) & (deltas <= 1.0)])
    grid = [0.5] + inside + [1.0]
    candidates = [1.0] + [(a + b) / 2 for a, b in zip(grid, grid[1:])][::-1] + [0.5]
    for delta in candidates:
        if is_regular(dilate(B, delta)).is_regular:
            return delta
    raise InvariantViolation("no regular dilate found in [1/2, 1]")


def size_bound_check(B: BohrSet, delta: float) -> SizeBoundReport:
    """Check |B_delta| >= (delta/2)^(3d) |B| by exact enumeration."""
    if not 0 < delta <= 1:
        raise ValueError(f"dilation factor must lie in (0, 1], got {delta}")
    radii = _sorted_radii(B)
    dilate_size = _count_within(radii, B.width * delta)
    lower = (delta / 2) ** (3 * B.dimension) * _count_within(radii, B.width)
    return SizeBoundReport(dilate_size, lower, dilate_size >= lower)
