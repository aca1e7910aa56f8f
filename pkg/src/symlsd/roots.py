"""Real cubic solving and the spectral-support root extractions.

The limit law of the symmetrized lag-tau covariance matrix is governed by two
cubics: one parametrized by the spectral argument x whose largest real root
``y0`` enters the density formula, and one parametrized by the concentration
ratio c alone whose distinguished root ``y1`` fixes the support endpoint.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .errors import DegenerateCubicError, DomainError, InvalidInputError

# Roots closer than this (relative) merge into one root with raised
# multiplicity, so the double root at the support edge is reported cleanly.
MERGE_RTOL = 1e-9

# Below this distance from c = 1 the edge formula (1-c)/(y1-1) is 0/0-like;
# the exact c = 1 value is used instead.
C_ONE_TOL = 1e-8


@dataclass(frozen=True)
class Cubic:
    """a3*y**3 + a2*y**2 + a1*y + a0 with real coefficients, a3 != 0."""

    a3: float
    a2: float
    a1: float
    a0: float

    def __post_init__(self):
        coeffs = (self.a3, self.a2, self.a1, self.a0)
        if not all(math.isfinite(a) for a in coeffs):
            raise InvalidInputError(f"non-finite cubic coefficients {coeffs}")
        if self.a3 == 0.0:
            raise InvalidInputError("leading coefficient must be nonzero")

    def __call__(self, y: float) -> float:
        return ((self.a3 * y + self.a2) * y + self.a1) * y + self.a0

    def deriv(self, y: float) -> float:
        return (3.0 * self.a3 * y + 2.0 * self.a2) * y + self.a1


@dataclass(frozen=True)
class SupportSolution:
    """Roots and support endpoint of the limit law at one (x, c) pair.

    ``y1`` is NaN within C_ONE_TOL of c = 1, where the endpoint is the exact
    value 2 and the edge cubic degenerates.
    """

    x: float
    c: float
    y0: float
    y1: float
    a: float


def _polish(cubic: Cubic, y: float, steps: int = 12) -> float:
    """Damped Newton refinement of a cubic root."""
    fy = cubic(y)
    for _ in range(steps):
        if fy == 0.0:
            break
        d = cubic.deriv(y)
        if d == 0.0 or not math.isfinite(d):
            break
        step = fy / d
        y_new = y - step
        f_new = cubic(y_new)
        # Halve the step while it makes things worse (near double roots).
        halvings = 0
        while abs(f_new) > abs(fy) and halvings < 6:
            step *= 0.5
            y_new = y - step
            f_new = cubic(y_new)
            halvings += 1
        if abs(f_new) >= abs(fy):
            break
        y, fy = y_new, f_new
    return y


def _merge(values: list[float]) -> list[tuple[float, int]]:
    values = sorted(values)
    merged: list[tuple[float, int]] = []
    for v in values:
        if merged and abs(v - merged[-1][0]) <= MERGE_RTOL * max(1.0, abs(v)):
            root, mult = merged[-1]
            merged[-1] = ((root * mult + v) / (mult + 1), mult + 1)
        else:
            merged.append((v, 1))
    return merged


def solve_cubic(cubic: Cubic) -> list[tuple[float, int]]:
    """All real roots of a cubic, ascending, as (root, multiplicity) pairs.

    Uses the trigonometric method when the discriminant indicates three real
    roots and Cardano otherwise, followed by Newton polishing.  Multiplicities
    sum to 1 or 3.
    """
    b = cubic.a2 / cubic.a3
    c = cubic.a1 / cubic.a3
    d = cubic.a0 / cubic.a3
    shift = -b / 3.0
    p = c - b * b / 3.0
    q = (2.0 * b * b * b / 27.0) - b * c / 3.0 + d
    disc = -4.0 * p * p * p - 27.0 * q * q
    scale = max(1.0, abs(p) ** 3, q * q)

    if disc > -1e-10 * scale:
        # Three real roots, possibly repeated.
        if p >= 0.0:
            # Only reachable when p and q are both tiny: a (near-)triple root.
            ts = [shift - math.copysign(abs(q) ** (1.0 / 3.0), q)] * 3
        else:
            half = math.sqrt(-p / 3.0)
            arg = 3.0 * q / (2.0 * p * half)
            arg = min(1.0, max(-1.0, arg))
            theta = math.acos(arg) / 3.0
            ts = [
                shift + 2.0 * half * math.cos(theta - 2.0 * math.pi * k / 3.0)
                for k in range(3)
            ]
        return _merge([_polish(cubic, t) for t in ts])

    # One real root via Cardano.
    s = math.sqrt(q * q / 4.0 + p * p * p / 27.0)
    u = math.copysign(abs(-q / 2.0 + s) ** (1.0 / 3.0), -q / 2.0 + s)
    v = math.copysign(abs(-q / 2.0 - s) ** (1.0 / 3.0), -q / 2.0 - s)
    return [(_polish(cubic, shift + u + v), 1)]


def _density_cubic(x: float, c: float) -> Cubic:
    x2 = x * x
    return Cubic(1.0, -(((1.0 - c) ** 2) - x2) / x2, -4.0 / x2, -4.0 / x2)


def y0(x: float, c: float) -> float:
    """Largest real root of the density-defining cubic; even in x."""
    if x == 0.0:
        raise DomainError("y0 is undefined at x = 0 (the cubic has 1/x^2 terms)")
    if not (c > 0.0 and math.isfinite(c)):
        raise InvalidInputError(f"c must be a positive real, got {c}")
    return solve_cubic(_density_cubic(x, c))[-1][0]


def _edge_cubic_value(lead: float, y: float) -> float:
    return ((lead * y + 1.0) * y + 1.0) * y - 1.0


def y1(c: float) -> float:
    """The real root of the edge cubic located in (1, inf) for c < 1 and (0, 1) for c > 1."""
    if not (c > 0.0 and math.isfinite(c)):
        raise InvalidInputError(f"c must be a positive real, got {c}")
    if abs(c - 1.0) < 1e-12:
        raise DegenerateCubicError("the edge root is undefined at c = 1")
    lead = (1.0 - c) ** 2 - 1.0
    if abs(lead) < 1e-12:
        # c = 2 collapses the cubic to y^2 + y - 1.
        candidates = [(math.sqrt(5.0) - 1.0) / 2.0, -(math.sqrt(5.0) + 1.0) / 2.0]
        if lead != 0.0:
            cub = Cubic(lead, 1.0, 1.0, -1.0)
            candidates = [_polish(cub, r) for r in candidates]
    else:
        candidates = [r for r, _ in solve_cubic(Cubic(lead, 1.0, 1.0, -1.0))]
    tol = 1e-9
    if c > 1.0:
        located = [r for r in candidates if -tol < r < 1.0 + tol]
    else:
        located = [r for r in candidates if r > 1.0 - tol]
    if not located:
        raise ArithmeticError(f"no edge root in the required interval for c={c}")
    return located[0]


def support_endpoint(c: float) -> float:
    """Positive endpoint a of the continuous support; exactly 2 at c = 1."""
    if not (c > 0.0 and math.isfinite(c)):
        raise InvalidInputError(f"c must be a positive real, got {c}")
    if abs(c - 1.0) < C_ONE_TOL:
        return 2.0
    r = y1(c)
    return (1.0 - c) * math.sqrt(1.0 + r) / (r - 1.0)


def support_solution(x: float, c: float) -> SupportSolution:
    """Bundle y0, y1 and the support endpoint for one (x, c) pair."""
    near_one = abs(c - 1.0) < C_ONE_TOL
    return SupportSolution(
        x=x,
        c=c,
        y0=y0(x, c),
        y1=math.nan if near_one else y1(c),
        a=support_endpoint(c),
    )
