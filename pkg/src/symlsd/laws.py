"""Limit laws and transforms for the symmetrized lag-tau covariance ensemble.

Covers the arcsine law of the half-band matrix, the Marchenko-Pastur law of
the lag-0 sample covariance, the symmetric limit law (density, CDF, atom),
its Stieltjes transform with deterministic branch tracking, and the
psi-function identities that tie the three matrix normalizations together.
"""

from __future__ import annotations

import cmath
import functools
import math
from dataclasses import dataclass

import mpmath
import numpy as np

from . import roots as _roots
from .errors import DomainError, InvalidInputError, PoleOnContourError
from .stats import quad

__all__ = [
    "arcsine_pdf", "arcsine_cdf",
    "mp_support", "mp_atom", "mp_pdf", "mp_cdf",
    "LimitLaw", "limit_law",
    "phi_density", "phi_radicand", "lsd_cdf", "lsd_cdf_interpolant",
    "StieltjesPoint", "stieltjes", "stieltjes_grid", "stieltjes_real",
    "density_via_inversion",
    "CompanionTransforms", "companion_transforms",
    "PsiBranch", "psi", "self_consistency_residual",
    "PHI_ORIGIN_CLAMP",
]


# ---------------------------------------------------------------------------
# Arcsine law on (-1, 1): the spectral limit of the half-band matrix.

def arcsine_pdf(t: float) -> float:
    """Density 1/(pi*sqrt(1-t^2)) on (-1, 1), zero outside."""
    if -1.0 < t < 1.0:
        return 1.0 / (math.pi * math.sqrt(1.0 - t * t))
    return 0.0


def arcsine_cdf(t):
    """CDF 1 - arccos(t)/pi; accepts scalars or arrays."""
    t = np.clip(np.asarray(t, dtype=float), -1.0, 1.0)
    out = 1.0 - np.arccos(t) / math.pi
    if out.ndim == 0:
        return float(out)
    return out


# ---------------------------------------------------------------------------
# Marchenko-Pastur law: the lag-0 reference.

def mp_support(c: float) -> tuple[float, float]:
    if not c > 0.0:
        raise InvalidInputError(f"c must be positive, got {c}")
    return (1.0 - math.sqrt(c)) ** 2, (1.0 + math.sqrt(c)) ** 2


def mp_atom(c: float) -> float:
    return max(0.0, 1.0 - 1.0 / c)


def mp_pdf(x: float, c: float) -> float:
    a, b = mp_support(c)
    if not a < x < b:
        return 0.0
    return math.sqrt((b - x) * (x - a)) / (2.0 * math.pi * c * x)


def mp_cdf(x: float, c: float) -> float:
    """CDF of the Marchenko-Pastur law, including the atom at 0 for c > 1."""
    a, b = mp_support(c)
    atom = mp_atom(c)
    base = atom if x >= 0.0 else 0.0
    if x <= a:
        return base
    if x >= b:
        return 1.0
    center = 0.5 * (a + b)
    half = 0.5 * (b - a)
    theta = math.asin(min(1.0, max(-1.0, (x - center) / half)))

    def integrand(th: float) -> float:
        return (half * math.cos(th)) ** 2 / (
            2.0 * math.pi * c * (center + half * math.sin(th))
        )

    mass = quad(integrand, -math.pi / 2.0, theta, abs_tol=1e-11)
    return min(1.0, base + mass)


# ---------------------------------------------------------------------------
# The symmetric limit law.

@dataclass(frozen=True)
class LimitLaw:
    """Support endpoint and atom mass of the limit law at ratio c."""

    c: float
    y: float
    a: float
    atom_mass: float


def limit_law(c: float) -> LimitLaw:
    if not (c > 0.0 and math.isfinite(c)):
        raise InvalidInputError(f"c must be a positive real, got {c}")
    return LimitLaw(
        c=c,
        y=1.0 / c,
        a=_roots.support_endpoint(c),
        atom_mass=max(0.0, 1.0 - 1.0 / c),
    )


# Evaluation point standing in for x = 0, where the density formula has a
# removable 0/0 structure (c != 1) or an integrable divergence (c = 1).
PHI_ORIGIN_CLAMP = 1e-8


def phi_radicand(x: float, c: float) -> float:
    """Unclamped discriminant argument of the density formula at x != 0."""
    ax = abs(float(x))
    v = _roots.y0(ax, c)
    t = 1.0 + v
    return v * v / t - ((1.0 - c) / ax + 1.0 / math.sqrt(t)) ** 2


@functools.lru_cache(maxsize=None)
def _phi_origin(c: float) -> float:
    # The double-precision formula loses all significance at |x| = 1e-8
    # (two ~1e16 terms cancel to O(1)); evaluate the clamp point in extended
    # precision instead.
    with mpmath.workdps(60):
        x = mpmath.mpf(PHI_ORIGIN_CLAMP)
        cm = mpmath.mpf(repr(c))
        x2 = x * x
        coeffs = [1, -(((1 - cm) ** 2) - x2) / x2, -4 / x2, -4 / x2]
        rts = mpmath.polyroots(coeffs, maxsteps=200, extraprec=120)
        reals = [mpmath.re(r) for r in rts if abs(mpmath.im(r)) < mpmath.mpf("1e-30")]
        v = max(reals)
        t = 1 + v
        rad = v * v / t - ((1 - cm) / x + 1 / mpmath.sqrt(t)) ** 2
        if rad < 0:
            rad = mpmath.mpf(0)
        return float(mpmath.sqrt(rad) / (2 * cm * mpmath.pi))


def phi_density(x: float, c: float) -> float:
    """Density of the limit law; even in x, zero outside [-a, a].

    At x = 0 the formula is indeterminate; the value at |x| = 1e-8 is
    reported instead (for c = 1 the density diverges at the origin, so the
    reported origin value is the clamp-point value, not a limit).
    """
    law = limit_law(c)
    ax = abs(float(x))
    if ax > law.a:
        return 0.0
    if ax == 0.0:
        return _phi_origin(c)
    rad = phi_radicand(ax, c)
    if rad < 0.0:
        # Edge roundoff within -1e-12 clamps to zero; anything more negative
        # means the point is effectively outside the support.
        return 0.0
    return math.sqrt(rad) / (2.0 * c * math.pi)


def _half_mass_integral(x_upper: float, c: float, abs_tol: float = 1e-9) -> float:
    # Substituting x = u^2 tames the inverse-square-root divergence at the
    # origin when c is near 1; elsewhere it is harmless.
    if x_upper <= 0.0:
        return 0.0
    return quad(
        lambda u: 2.0 * u * phi_density(u * u, c),
        0.0,
        math.sqrt(x_upper),
        abs_tol=abs_tol,
    )


def lsd_cdf(x: float, c: float) -> float:
    """CDF of the limit law: symmetric continuous part plus the origin atom."""
    law = limit_law(c)
    half = 0.5 * min(1.0, 1.0 / c)
    if x <= -law.a:
        return 0.0
    if x >= law.a:
        return 1.0
    tail = _half_mass_integral(min(abs(x), law.a), c)
    if x < 0.0:
        return max(0.0, half - tail)
    return min(1.0, half + law.atom_mass + tail)


_INTERPOLANT_CACHE: dict[tuple[float, int], object] = {}


def lsd_cdf_interpolant(c: float, cells: int = 4000):
    """Vectorized approximate CDF, accurate to ~1e-6, for large-sample KS work."""
    key = (float(c), cells)
    if key in _INTERPOLANT_CACHE:
        return _INTERPOLANT_CACHE[key]
    law = limit_law(c)
    half = 0.5 * min(1.0, 1.0 / c)
    u = np.linspace(0.0, math.sqrt(law.a), 2 * cells + 1)
    g = np.array([2.0 * ui * phi_density(ui * ui, c) for ui in u])
    h = u[2] - u[0]
    # Cumulative composite Simpson over cell pairs.
    seg = (h / 6.0) * (g[:-2:2] + 4.0 * g[1::2] + g[2::2])
    G = np.concatenate([[0.0], np.cumsum(seg)])
    xs = u[::2] ** 2

    def F(x):
        x = np.asarray(x, dtype=float)
        scalar = x.ndim == 0
        x = np.atleast_1d(x)
        tail = np.interp(np.clip(np.abs(x), 0.0, law.a), xs, G)
        out = np.where(x < 0.0, half - tail, half + law.atom_mass + tail)
        out = np.clip(out, 0.0, 1.0)
        out[x <= -law.a] = 0.0
        out[x >= law.a] = 1.0
        return float(out[0]) if scalar else out

    _INTERPOLANT_CACHE[key] = F
    return F


# ---------------------------------------------------------------------------
# Stieltjes transform: deterministic branch tracking on the defining quartic.

@dataclass(frozen=True)
class StieltjesPoint:
    z: complex
    m: complex
    residual: float


# Homotopy schedule: straight line from z0 = 1e6*i down to the target, with
# geometrically shrinking offsets so root tracking stays stable near the
# real axis.  181 + 1 steps, within the 200-step budget.
_HOMOTOPY_TS = np.concatenate([np.logspace(0.0, -12.0, 181), [0.0]])
_Z_START = 1e6j


def _quartic_coeffs(z: np.ndarray, c: float, kind: str):
    """Coefficients (a4..a0) of the defining quartic in m at each z.

    kind "m": transform of the (1/T)-normalized matrix;
    kind "under": transform of the (1/N)-normalized matrix.
    """
    if kind == "m":
        a4 = -(c ** 4) * z * z
        a3 = -2.0 * c ** 3 * (c - 1.0) * z
        a2 = c * c * (z * z - (c - 1.0) ** 2)
        a1 = 2.0 * c * (c - 1.0) * z
    elif kind == "under":
        a4 = -(c * c) * z * z
        a3 = -2.0 * c * (c - 1.0) * z
        a2 = c * c * z * z - (c - 1.0) ** 2
        a1 = 2.0 * c * (c - 1.0) * z
    else:  # pragma: no cover
        raise ValueError(kind)
    a0 = np.full_like(z, (c - 1.0) ** 2 - 1.0)
    return a4, a3, a2, a1, a0


def _product_residual(m: np.ndarray, z: np.ndarray, c: float, kind: str):
    if kind == "m":
        return (1.0 - c * c * m * m) * (c + c * z * m - 1.0) ** 2 - 1.0
    return (c * z * m + c - 1.0) ** 2 * (1.0 - m * m) - 1.0


def _product_residual_deriv(m: np.ndarray, z: np.ndarray, c: float, kind: str):
    if kind == "m":
        A = c + c * z * m - 1.0
        return -2.0 * c * c * m * A * A + (1.0 - c * c * m * m) * 2.0 * c * z * A
    B = c * z * m + c - 1.0
    return 2.0 * c * z * B * (1.0 - m * m) - 2.0 * m * B * B


def _quartic_roots(z: np.ndarray, c: float, kind: str) -> np.ndarray:
    """Roots of the quartic at each z via batched companion-matrix eigenvalues."""
    a4, a3, a2, a1, a0 = _quartic_coeffs(z, c, kind)
    n = z.shape[0]
    comp = np.zeros((n, 4, 4), dtype=complex)
    comp[:, 1, 0] = 1.0
    comp[:, 2, 1] = 1.0
    comp[:, 3, 2] = 1.0
    comp[:, 0, 3] = -a0 / a4
    comp[:, 1, 3] = -a1 / a4
    comp[:, 2, 3] = -a2 / a4
    comp[:, 3, 3] = -a3 / a4
    return np.linalg.eigvals(comp)


def _newton_polish(m: np.ndarray, z: np.ndarray, c: float, kind: str,
                   steps: int = 4) -> np.ndarray:
    best = m.copy()
    best_res = np.abs(_product_residual(best, z, c, kind))
    cur = m.copy()
    for _ in range(steps):
        d = _product_residual_deriv(cur, z, c, kind)
        r = _product_residual(cur, z, c, kind)
        ok = np.abs(d) > 0
        cur = np.where(ok, cur - r / np.where(ok, d, 1.0), cur)
        res = np.abs(_product_residual(cur, z, c, kind))
        better = res < best_res
        best = np.where(better, cur, best)
        best_res = np.where(better, res, best_res)
    return best


def _track(z_targets: np.ndarray, c: float, kind: str):
    zs = np.asarray(z_targets, dtype=complex)
    if np.any(zs.imag <= 0.0):
        raise DomainError("Stieltjes transform requires Im z > 0")
    prev = np.full(zs.shape, -1.0 / _Z_START, dtype=complex)
    for t in _HOMOTOPY_TS:
        zt = zs + (_Z_START - zs) * t
        roots = _quartic_roots(zt, c, kind)
        pick = np.argmin(np.abs(roots - prev[:, None]), axis=1)
        prev = roots[np.arange(zs.shape[0]), pick]
    m = _newton_polish(prev, zs, c, kind)
    # Nevanlinna filter: among the final roots, require Im m > 0.
    bad = m.imag <= 0.0
    if np.any(bad):
        roots = _quartic_roots(zs[bad], c, kind)
        up = roots.imag > 0.0
        dist = np.where(up, np.abs(roots - m[bad, None]), np.inf)
        pick = np.argmin(dist, axis=1)
        fixed = roots[np.arange(roots.shape[0]), pick]
        m[bad] = _newton_polish(fixed, zs[bad], c, kind)
    res = np.abs(_product_residual(m, zs, c, kind))
    return m, res


def stieltjes_grid(zs, c: float):
    """Stieltjes transform values and quartic residuals on an array of z."""
    if not c > 0.0:
        raise InvalidInputError(f"c must be positive, got {c}")
    return _track(np.atleast_1d(np.asarray(zs, dtype=complex)), c, "m")


def stieltjes(z: complex, c: float) -> StieltjesPoint:
    """Stieltjes transform of the limit law at one point of the upper half-plane."""
    m, res = stieltjes_grid([z], c)
    return StieltjesPoint(z=complex(z), m=complex(m[0]), residual=float(res[0]))


def stieltjes_real(x: float, c: float):
    """Closed-form boundary transform on the real axis.

    Uses the negative-axis branch expression for x < 0 and the
    positive-axis one for x > 0, with the inner square root signed so the
    value is the limit from the upper half-plane: Im m >= 0 inside the
    support, and the honest (bounded, decaying) real root outside it.
    Outside the support the value is returned as a float.
    """
    if x == 0.0:
        raise DomainError("stieltjes_real is undefined at x = 0")
    if not c > 0.0:
        raise InvalidInputError(f"c must be positive, got {c}")
    v = _roots.y0(x, c)
    t = 1.0 + v
    st = math.sqrt(t)
    p = (1.0 - c) / x
    if x < 0.0:
        outer = p + st
        inner = cmath.sqrt((p - 1.0 / st) ** 2 - v * v / t)
        m = (outer - inner) / (2.0 * c)
    else:
        outer = p - st
        inner = cmath.sqrt((p + 1.0 / st) ** 2 - v * v / t)
        m = (outer + inner) / (2.0 * c)
    if m.imag < 0.0:
        m = (outer - (m * 2.0 * c - outer)) / (2.0 * c)
    if abs(m.imag) <= 1e-12 * max(1.0, abs(m.real)):
        return m.real
    return m


def density_via_inversion(x: float, c: float, eps: float = 1e-6) -> float:
    """Density recovered from the transform just above the real axis."""
    if not eps > 0.0:
        raise InvalidInputError(f"eps must be positive, got {eps}")
    return stieltjes(complex(x, eps), c).m.imag / math.pi


# ---------------------------------------------------------------------------
# The three matrix normalizations and the psi self-consistency identity.

@dataclass(frozen=True)
class CompanionTransforms:
    """Transforms of the three normalizations: m at argument z, the
    (1/N)-normalized ``m_under`` and trace-dual ``m_tilde`` at z/c."""

    m: complex
    m_under: complex
    m_tilde: complex


def companion_transforms(z: complex, c: float) -> CompanionTransforms:
    z = complex(z)
    if z.imag <= 0.0:
        raise DomainError("requires Im z > 0")
    w = z / c
    m = stieltjes(z, c).m
    mu, _ = _track(np.array([w]), c, "under")
    m_under = complex(mu[0])
    m_tilde = c * m_under - (1.0 - c) / w
    return CompanionTransforms(m=m, m_under=m_under, m_tilde=m_tilde)


@dataclass(frozen=True)
class PsiBranch:
    u: complex
    y: float
    s_inside: complex
    s_outside: complex
    value: complex


def psi(u: complex, y: float) -> PsiBranch:
    """Closed form of -1/u + y * E[t/(1+tu)] under the arcsine law.

    The contour-integral evaluation has simple poles at
    s = (-1 +/- sqrt(1-u^2))/u with product 1; the residue at the pole
    inside the unit circle is the one that contributes.
    """
    u = complex(u)
    if u == 0.0:
        raise DomainError("psi is undefined at u = 0")
    if not y > 0.0:
        raise InvalidInputError(f"y must be positive, got {y}")
    root = cmath.sqrt(1.0 - u * u)
    s1 = (-1.0 + root) / u
    s2 = (-1.0 - root) / u
    if abs(abs(s1) - 1.0) < 1e-12 or abs(abs(s2) - 1.0) < 1e-12:
        raise PoleOnContourError(f"|u| = 1 puts a pole on the contour (u={u})")
    s_in, s_out = (s1, s2) if abs(s1) < 1.0 else (s2, s1)
    value = (y - 1.0) / u - y / (u * (u * s_in + 1.0))
    return PsiBranch(u=u, y=y, s_inside=s_in, s_outside=s_out, value=value)


def self_consistency_residual(z: complex, c: float) -> float:
    """Magnitude of the defect in the fixed-point identity tying z to psi.

    Chains the three normalizations: m at c*z, scaled to the
    (1/N)-normalized transform at z, converted to the trace dual, and fed
    through psi with y = 1/c.
    """
    z = complex(z)
    if z.imag <= 0.0:
        raise DomainError("requires Im z > 0")
    y = 1.0 / c
    m_under = c * stieltjes(c * z, c).m
    m_tilde = c * m_under - (1.0 - c) / z
    u = y * m_tilde + (y - 1.0) / z
    return abs(z - psi(u, y).value)
