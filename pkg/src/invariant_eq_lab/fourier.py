"""Discrete Fourier analysis on Z/pZ.

Conventions, fixed once for the whole package:

    character        gamma_t(x) = exp(2*pi*i*t*x / p)
    transform        fhat(t)    = sum_x f(x) * exp(-2*pi*i*t*x / p)
    inversion        f(x)       = (1/p) * sum_t fhat(t) * exp(2*pi*i*t*x / p)
    convolution      (f*g)(x)   = sum_t f(t) * g(x - t)
    L_q norm         ||f||_q    = (sum_x |f(x)|^q)^(1/q),  ||f||_inf = max |f|

Convolutions of integer-valued functions are integer-exact: the FFT fast
path is validated entry by entry (rounding residual below 0.1) and falls
back to direct O(p^2) integer arithmetic when validation fails.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .cyclic import PrimeCyclicGroup, ResidueSet

#: Largest per-entry distance from an integer tolerated on the FFT fast path.
ROUNDING_RESIDUAL_LIMIT = 0.1

#: Inclusive tolerance for the large-spectrum threshold, relative to |X|.
SPECTRUM_BOUNDARY_TOL = 1e-9


def _readonly(a: np.ndarray) -> np.ndarray:
    a.setflags(write=False)
    return a


@dataclass(frozen=True)
class GroupFunction:
    """A real-valued function on Z/pZ, stored as a length-p array."""

    group: PrimeCyclicGroup
    values: np.ndarray

    def __post_init__(self) -> None:
        v = np.asarray(self.values, dtype=np.float64)
        if v.shape != (self.group.p,):
            raise ValueError(f"expected {self.group.p} values, got shape {v.shape}")
        if not np.all(np.isfinite(v)):
            raise ValueError("values must be finite")
        object.__setattr__(self, "values", _readonly(v))

    def is_integer_valued(self) -> bool:
        return bool(np.all(self.values == np.rint(self.values)))


@dataclass(frozen=True)
class FourierCoefficients:
    """Fourier coefficients indexed by frequency t in [0, p)."""

    group: PrimeCyclicGroup
    values: np.ndarray

    def __post_init__(self) -> None:
        v = np.asarray(self.values, dtype=np.complex128)
        if v.shape != (self.group.p,):
            raise ValueError(f"expected {self.group.p} coefficients, got shape {v.shape}")
        object.__setattr__(self, "values", _readonly(v))


@dataclass(frozen=True)
class Spectrum:
    """Frequencies where an indicator's Fourier coefficient is large."""

    threshold: float
    frequencies: frozenset[int]


def dft(f: GroupFunction) -> FourierCoefficients:
    """Forward transform fhat(t) = sum_x f(x) exp(-2 pi i t x / p)."""
    return FourierCoefficients(f.group, np.fft.fft(f.values))


def inverse_dft(F: FourierCoefficients) -> GroupFunction:
    """Inverse transform under the fixed (1/p)-normalization convention."""
    vals = np.fft.ifft(F.values)
    return GroupFunction(F.group, vals.real)


def _convolve_exact_int(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    """Cyclic convolution by direct integer arithmetic (linear conv + fold)."""
    p = len(a)
    lin = np.convolve(a.astype(np.int64), b.astype(np.int64))
    out = lin[:p].copy()
    out[: p - 1] += lin[p:]
    return out


def convolve(f: GroupFunction, g: GroupFunction) -> GroupFunction:
    """(f*g)(x) = sum_t f(t) g(x-t), integer-exact for integer inputs."""
    if f.group != g.group:
        raise ValueError("operands live in different groups")
    raw = np.fft.ifft(np.fft.fft(f.values) * np.fft.fft(g.values)).real
    if f.is_integer_valued() and g.is_integer_valued():
        rounded = np.rint(raw)
        if np.max(np.abs(raw - rounded)) >= ROUNDING_RESIDUAL_LIMIT:
            # Precision failure on the fast path; recompute exactly.
            exact = _convolve_exact_int(np.rint(f.values), np.rint(g.values))
            return GroupFunction(f.group, exact.astype(np.float64))
        return GroupFunction(f.group, rounded)
    return GroupFunction(f.group, raw)


def multi_convolve(f: GroupFunction, k: int) -> GroupFunction:
    """k-fold convolution f * f * ... * f (f appears k times)."""
    if k < 1:
        raise ValueError("fold count must be positive")
    out = f
    for _ in range(k - 1):
        out = convolve(out, f)
    return out


def lp_norm(f: GroupFunction, q: float) -> float:
    """||f||_q over counting measure; q may be math.inf."""
    absv = np.abs(f.values)
    if q == math.inf:
        return float(np.max(absv)) if absv.size else 0.0
    if q < 1:
        raise ValueError(f"norm exponent must be >= 1, got {q}")
    if q == 1:
        return float(np.sum(absv))
    if q == 2:
        return float(math.sqrt(np.sum(absv * absv)))
    return float(np.sum(absv**q) ** (1.0 / q))


def expectation(f: GroupFunction) -> float:
    """(1/p) sum_x f(x)."""
    return float(np.mean(f.values))


def indicator(A: ResidueSet) -> GroupFunction:
    v = np.zeros(A.group.p)
    if len(A):
        v[np.asarray(A.elements)] = 1.0
    return GroupFunction(A.group, v)


def normalized_indicator(A: ResidueSet) -> GroupFunction:
    """mu_A = 1_A / |A|, a probability measure on the group."""
    if len(A) == 0:
        raise ValueError("cannot normalize the indicator of an empty set")
    v = np.zeros(A.group.p)
    v[np.asarray(A.elements)] = 1.0 / len(A)
    return GroupFunction(A.group, v)


def spectrum(X: ResidueSet, delta: float) -> Spectrum:
    """Frequencies t with |indicator_hat(t)| >= delta * |X|.

    Boundary comparisons are inclusive within SPECTRUM_BOUNDARY_TOL * |X|.
    """
    if len(X) == 0:
        raise ValueError("spectrum of an empty set is undefined")
    if not 0 < delta <= 1:
        raise ValueError(f"threshold must lie in (0, 1], got {delta}")
    coeffs = dft(indicator(X)).values
    cut = delta * len(X) - SPECTRUM_BOUNDARY_TOL * len(X)
    freqs = frozenset(int(t) for t in np.nonzero(np.abs(coeffs) >= cut)[0])
    return Spectrum(delta, freqs)
