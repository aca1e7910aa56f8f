"""Adaptive quadrature and goodness-of-fit utilities.

Shared plumbing: an adaptive Simpson integrator (complex-valued integrands
allowed), an arcsine-weighted expectation helper, and an exact two-sided
Kolmogorov-Smirnov statistic against a reference CDF that may carry atoms.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Callable, Iterable, Sequence

import numpy as np

from .errors import AccuracyError, InvalidInputError


def _finite(v) -> bool:
    return math.isfinite(abs(v))


def quad(f: Callable[[float], complex], lo: float, hi: float,
         abs_tol: float = 1e-10, max_depth: int = 50) -> complex:
    """Adaptive Simpson estimate of the integral of f over [lo, hi].

    Handles integrable endpoint singularities by nudging the endpoint
    evaluations inward.  Raises AccuracyError (carrying the best estimate)
    when the recursion depth is exhausted before reaching abs_tol.
    """
    if not lo < hi:
        raise InvalidInputError(f"need lo < hi, got [{lo}, {hi}]")
    nudge = 1e-12 * (hi - lo)

    def endpoint(x, inward):
        try:
            v = f(x)
        except (ZeroDivisionError, OverflowError, ValueError):
            return f(x + inward)
        return v if _finite(v) else f(x + inward)

    fa = endpoint(lo, nudge)
    fb = endpoint(hi, -nudge)

    def simpson(a, fa, m, fm, b, fb):
        return (b - a) / 6.0 * (fa + 4.0 * fm + fb)

    m0 = 0.5 * (lo + hi)
    fm0 = f(m0)
    total = 0.0 + 0.0j if isinstance(fa + fb + fm0, complex) else 0.0
    leftover = 0.0
    # Stack entries: (a, fa, m, fm, b, fb, whole, tol, depth)
    stack = [(lo, fa, m0, fm0, hi, fb, simpson(lo, fa, m0, fm0, hi, fb),
              abs_tol, 0)]
    while stack:
        a, fa_, m, fm, b, fb_, whole, tol, depth = stack.pop()
        lm = 0.5 * (a + m)
        rm = 0.5 * (m + b)
        flm = f(lm)
        frm = f(rm)
        left = simpson(a, fa_, lm, flm, m, fm)
        right = simpson(m, fm, rm, frm, b, fb_)
        err = abs(left + right - whole)
        if err <= 15.0 * tol or depth >= max_depth:
            total += left + right + (left + right - whole) / 15.0
            if err > 15.0 * tol:
                leftover += err / 15.0
            continue
        stack.append((a, fa_, lm, flm, m, fm, left, tol / 2.0, depth + 1))
        stack.append((m, fm, rm, frm, b, fb_, right, tol / 2.0, depth + 1))
    if leftover > abs_tol:
        raise AccuracyError(
            f"adaptive Simpson exhausted depth {max_depth} on [{lo}, {hi}] "
            f"with residual error {leftover:.3e}",
            total,
        )
    if isinstance(total, complex):
        return total
    return float(total)


def arcsine_expectation(g: Callable[[float], complex],
                        abs_tol: float = 1e-12) -> complex:
    """Integral of g(t) against the arcsine weight 1/(pi*sqrt(1-t^2)) on (-1, 1).

    Uses the cosine substitution t = cos(theta), which removes the endpoint
    singularities exactly.
    """
    return quad(lambda th: g(math.cos(th)), 0.0, math.pi, abs_tol=abs_tol) / math.pi


@dataclass(frozen=True)
class EmpiricalCdf:
    """Right-continuous step CDF of a finite sample."""

    values: np.ndarray

    def __post_init__(self):
        object.__setattr__(self, "values", np.sort(np.asarray(self.values, float)))

    @property
    def n(self) -> int:
        return self.values.size

    def __call__(self, x):
        return np.searchsorted(self.values, x, side="right") / self.n


@dataclass(frozen=True)
class KsReport:
    statistic: float
    location: float
    n: int


def ks_distance(sample: Sequence[float],
                reference_cdf: Callable,
                atoms: Iterable[tuple[float, float]] = ()) -> KsReport:
    """Exact two-sided KS statistic of a sample against a reference CDF.

    ``atoms`` lists (location, mass) jumps of the reference so that left
    limits at atoms are exact rather than detected numerically.
    """
    xs = np.sort(np.asarray(sample, dtype=float))
    n = xs.size
    if n == 0:
        raise InvalidInputError("empty sample")
    try:
        F = np.asarray(reference_cdf(xs), dtype=float)
        if F.shape != xs.shape:
            raise TypeError
    except TypeError:
        F = np.array([reference_cdf(x) for x in xs], dtype=float)
    F_left = F.copy()
    for loc, mass in atoms:
        F_left[xs == loc] -= mass
    i = np.arange(1, n + 1, dtype=float)
    d_plus = i / n - F
    d_minus = F_left - (i - 1.0) / n
    devs = np.maximum(d_plus, d_minus)
    k = int(np.argmax(devs))
    return KsReport(statistic=float(devs[k]), location=float(xs[k]), n=n)
