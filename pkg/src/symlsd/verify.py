"""Invariant suites backing the ``verify`` CLI command.

Each suite re-derives its expectations from independent oracles (bisection,
quadrature, the dense eigensolver) rather than from the code paths it
checks, and reports one pass/fail line per invariant.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from . import ensemble, laws, roots, stats


@dataclass(frozen=True)
class CheckResult:
    suite: str
    name: str
    passed: bool
    detail: str


def _check(suite: str, name: str, passed: bool, detail: str) -> CheckResult:
    return CheckResult(suite=suite, name=name, passed=bool(passed), detail=detail)


# ---------------------------------------------------------------------------
# Oracles.

def bisect_root(f, lo: float, hi: float, tol: float = 1e-13) -> float:
    flo = f(lo)
    if flo == 0.0:
        return lo
    for _ in range(200):
        mid = 0.5 * (lo + hi)
        fm = f(mid)
        if fm == 0.0 or hi - lo < tol * max(1.0, abs(mid)):
            return mid
        if (fm > 0) == (flo > 0):
            lo, flo = mid, fm
        else:
            hi = mid
    return 0.5 * (lo + hi)


def scan_and_bisect(f, grid: np.ndarray) -> list[float]:
    """Roots located by sign changes of f on an ascending grid."""
    vals = np.array([f(g) for g in grid])
    found = []
    for i in range(len(grid) - 1):
        if vals[i] == 0.0:
            found.append(grid[i])
        elif vals[i] * vals[i + 1] < 0.0:
            found.append(bisect_root(f, grid[i], grid[i + 1]))
    if vals[-1] == 0.0:
        found.append(grid[-1])
    return found


def psi_quadrature(u: complex, y: float, abs_tol: float = 1e-11) -> complex:
    """Independent quadrature evaluation of -1/u + y * E[t/(1+tu)]."""
    return -1.0 / u + y * stats.arcsine_expectation(
        lambda t: t / (1.0 + t * u), abs_tol=abs_tol
    )


_SIGN_GRID = np.concatenate([
    -np.logspace(4, -3, 300), [0.0], np.logspace(-3, 4, 300)
])


# ---------------------------------------------------------------------------
# Suites.

def roots_suite(quick: bool = False) -> list[CheckResult]:
    out = []

    cs = [round(0.1 * k, 1) for k in range(1, 10)] + \
         [round(1.0 + 0.1 * k, 1) for k in range(1, 21)]
    worst = 0.0
    for c in cs:
        lead = (1.0 - c) ** 2 - 1.0
        r = roots.y1(c)
        worst = max(worst, abs(((lead * r + 1.0) * r + 1.0) * r - 1.0))
    out.append(_check("roots", "edge-root residual over c grid",
                      worst <= 1e-10, f"max |residual| = {worst:.2e}"))

    lo = roots.support_endpoint(1.0 - 1e-3)
    hi = roots.support_endpoint(1.0 + 1e-3)
    ok = abs(lo - 2.0) <= 0.05 and abs(hi - 2.0) <= 0.05
    out.append(_check("roots", "endpoint continuity at c = 1",
                      ok, f"a(1-1e-3) = {lo:.6f}, a(1+1e-3) = {hi:.6f}"))

    worst = 0.0
    for c in (0.5, 1.0, 2.0):
        a = roots.support_endpoint(c)
        rad = laws.phi_radicand(a - 1e-6, c)
        worst = min(worst, rad)
        _ = laws.phi_density(a - 1e-6, c)
    out.append(_check("roots", "radicand clamp near the support edge",
                      worst >= -1e-12, f"min radicand = {worst:.2e}"))

    rng = np.random.default_rng(20240817)
    n_cubics = 200 if quick else 1000
    worst = 0.0
    for _ in range(n_cubics):
        a3 = rng.uniform(0.1, 5.0) * rng.choice([-1.0, 1.0])
        a2, a1, a0 = rng.uniform(-5.0, 5.0, 3)
        cub = roots.Cubic(a3, a2, a1, a0)
        mine = [r for r, mult in roots.solve_cubic(cub) for _ in range(mult)]
        oracle = scan_and_bisect(cub, _SIGN_GRID)
        for r in oracle:
            err = min(abs(r - m) for m in mine) / max(1.0, abs(r))
            worst = max(worst, err)
    out.append(_check("roots", f"cubic solver vs scan-and-bisect ({n_cubics} random cubics)",
                      worst <= 1e-10, f"max relative mismatch = {worst:.2e}"))
    return out


def theory_suite(quick: bool = False) -> list[CheckResult]:
    out = []
    cs = (0.2, 0.5, 1.0, 2.0, 2.5)
    x_step = 1.0 if quick else 0.25
    xs = np.arange(-5.0, 5.0 + 1e-9, x_step)
    ims = (1e-3, 0.1, 1.0)

    worst_res = 0.0
    min_im = np.inf
    for c in cs:
        for im in ims:
            zs = xs + 1j * im
            m, res = laws.stieltjes_grid(zs, c)
            worst_res = max(worst_res, float(np.max(res)))
            min_im = min(min_im, float(np.min(m.imag)))
    out.append(_check("theory", "quartic residual on the z grid",
                      worst_res <= 1e-10, f"max residual = {worst_res:.2e}"))
    out.append(_check("theory", "Nevanlinna property on the z grid",
                      min_im > 0.0, f"min Im m = {min_im:.2e}"))

    worst = 0.0
    worst_c1 = 0.0
    for c in (0.2, 0.5, 0.7, 1.0, 1.5, 2.0, 2.5):
        a = roots.support_endpoint(c)
        mass = 2.0 * laws._half_mass_integral(a, c)
        err = abs(mass - min(1.0, 1.0 / c))
        if c == 1.0:
            worst_c1 = err
        else:
            worst = max(worst, err)
    ok = worst <= 1e-6 and worst_c1 <= 1e-4
    out.append(_check("theory", "continuous mass equals min(1, 1/c)",
                      ok, f"max err = {worst:.2e} (c=1: {worst_c1:.2e})"))

    sym_ok = all(
        laws.phi_density(x, c) == laws.phi_density(-x, c)
        for c in (0.5, 1.0, 2.0) for x in (0.3, 0.9, 1.7)
    )
    out.append(_check("theory", "density is even in x", sym_ok, "exact equality"))

    worst = 0.0
    for c in (0.5, 1.0, 2.0):
        a = roots.support_endpoint(c)
        grid = np.arange(0.05, a + 1e-9, 0.08 if quick else 0.02)
        grid = np.concatenate([-grid[::-1], grid])
        m, _ = laws.stieltjes_grid(grid + 1e-6j, c)
        inv = m.imag / math.pi
        phi = np.array([laws.phi_density(x, c) for x in grid])
        worst = max(worst, float(np.max(np.abs(inv - phi))))
    out.append(_check("theory", "inversion agreement at eps = 1e-6",
                      worst <= 1e-4, f"max |phi - inversion| = {worst:.2e}"))

    rng = np.random.default_rng(20240818)
    us = [0.1, -0.1, 0.5, -0.5, 0.9, -0.9]
    for _ in range(5 if quick else 20):
        r = rng.uniform(0.05, 0.95) if rng.random() < 0.5 else rng.uniform(1.05, 3.0)
        ang = rng.uniform(0.0, 2.0 * math.pi)
        us.append(r * complex(math.cos(ang), math.sin(ang)))
    worst = 0.0
    for u in us:
        for y in (0.5, 1.0, 2.0):
            worst = max(worst, abs(laws.psi(u, y).value - psi_quadrature(u, y)))
    out.append(_check("theory", "psi residue form vs quadrature",
                      worst <= 1e-8, f"max |diff| = {worst:.2e}"))

    worst = 0.0
    for z in (1 + 0.5j, 2j, -1 + 1j):
        for c in (0.5, 2.0):
            worst = max(worst, laws.self_consistency_residual(z, c))
    near = laws.self_consistency_residual(0.1 + 0.1j, 1.0)
    ok = worst <= 1e-8 and near <= 1e-6
    out.append(_check("theory", "psi self-consistency identity",
                      ok, f"max residual = {worst:.2e} (near-singular: {near:.2e})"))

    worst = 0.0
    for z in (1 + 0.5j, 0.3 + 0.2j, -2 + 1j):
        for c in (0.5, 2.0):
            ct = laws.companion_transforms(z, c)
            worst = max(worst, abs(ct.m - ct.m_under / c))
    out.append(_check("theory", "normalization scaling chain",
                      worst <= 1e-8, f"max |m - m_under/c| = {worst:.2e}"))

    ok = True
    detail = []
    for c in (0.5, 2.0):
        a = roots.support_endpoint(c)
        grid = np.linspace(-a - 0.2, a + 0.2, 41)
        F = np.array([laws.lsd_cdf(x, c) for x in grid])
        mono = bool(np.all(np.diff(F) >= -1e-12))
        # F(-x) is its own left limit (no atom at -x < 0); reflection pairs
        # it with 1 - F(x).
        refl = max(
            abs(laws.lsd_cdf(-x, c) - (1.0 - laws.lsd_cdf(x, c)))
            for x in (0.3, 0.8, a * 0.99)
        )
        mono_refl_ok = mono and refl <= 1e-8
        ok = ok and mono_refl_ok
        detail.append(f"c={c}: monotone={mono}, reflection err={refl:.2e}")
    out.append(_check("theory", "CDF monotonicity and reflection", ok, "; ".join(detail)))
    return out


def ensemble_suite(quick: bool = False) -> list[CheckResult]:
    out = []

    ns = (16, 64, 257) if quick else (16, 64, 257, 1000)
    worst = 0.0
    for n in ns:
        for tau in (1, 2, 3, 5):
            closed = ensemble.c_spectrum_closed(n, tau)
            solved = ensemble.hermitian_eigs(ensemble.build_c(n, tau))
            worst = max(worst, float(np.max(np.abs(closed - solved))))
    out.append(_check("ensemble", "closed-form band spectrum vs dense solver",
                      worst <= 1e-9, f"max abs error = {worst:.2e}"))

    worst = 0.0
    for n in (16, 257, 1000):
        k = np.arange(1, n + 1)
        ref = np.sort(np.cos(k * math.pi / (n + 1)))
        worst = max(worst, float(np.max(np.abs(ensemble.c_spectrum_closed(n, 1) - ref))))
    out.append(_check("ensemble", "tau = 1 spectrum matches cos(k*pi/(n+1))",
                      worst <= 1e-12, f"max abs error = {worst:.2e}"))

    worst = 0.0
    for tau in (1, 2, 3):
        ks = stats.ks_distance(ensemble.c_spectrum_closed(2000, tau), laws.arcsine_cdf)
        worst = max(worst, ks.statistic)
    out.append(_check("ensemble", "arcsine limit of the band spectrum (n = 2000)",
                      worst <= 0.01, f"max KS = {worst:.4f}"))

    rng = np.random.default_rng(20240819)
    worst = 0.0
    for _ in range(20):
        N = int(rng.integers(2, 31))
        T = int(rng.integers(2, 61))
        tau = int(rng.integers(0, 5))
        X = ensemble.sample_data(N, T, tau, ensemble.COMPLEX_GAUSSIAN,
                                 int(rng.integers(0, 2 ** 32)))
        lead = X[:, :T]
        lag = X[:, tau:tau + T]
        outer = (lead @ lag.conj().T + lag @ lead.conj().T) / (2.0 * T)
        sandwich = X @ ensemble.build_c(T + tau, tau) @ X.conj().T / T
        worst = max(worst, float(np.max(np.abs(outer - sandwich))))
        ensemble.build_m(X, tau)
    out.append(_check("ensemble", "outer-product vs band-sandwich construction",
                      worst <= 1e-10, f"max entry diff = {worst:.2e}"))

    M = ensemble.build_m(ensemble.sample_data(50, 80, 2, seed=7), 2)
    eigs = ensemble.hermitian_eigs(M)
    tr = abs(np.sum(eigs) - np.trace(M).real)
    out.append(_check("ensemble", "trace identity and real spectrum",
                      tr <= 1e-9 and np.isrealobj(eigs),
                      f"|sum(eigs) - trace| = {tr:.2e}"))

    N, T = (200, 400) if quick else (500, 1000)
    pools = {
        tau: ensemble.simulate_esd(N, T, tau, ensemble.COMPLEX_GAUSSIAN, seed=42)
        for tau in (1, 2, 3)
    }
    worst = 0.0
    for ta in (1, 2):
        for tb in range(ta + 1, 4):
            ecdf = stats.EmpiricalCdf(pools[tb])
            ks = stats.ks_distance(pools[ta], ecdf)
            worst = max(worst, ks.statistic)
    out.append(_check("ensemble", "tau-invariance of the pooled ESD",
                      worst <= 0.05, f"max pairwise KS = {worst:.4f}"))

    e1 = ensemble.simulate_esd(60, 120, 1, ensemble.REAL_GAUSSIAN, seed=5, replicates=3)
    e2 = ensemble.simulate_esd(60, 120, 1, ensemble.REAL_GAUSSIAN, seed=5, replicates=3)
    out.append(_check("ensemble", "seeded simulation determinism",
                      bool(np.array_equal(e1, e2)), "bitwise identical pools"))

    X = ensemble.sample_data(1000, 1000, 0, ensemble.COMPLEX_GAUSSIAN, seed=11)
    var = float(np.mean(np.abs(X) ** 2))
    mean = abs(complex(np.mean(X)))
    bound = 5.0 / math.sqrt(X.size)
    out.append(_check("ensemble", "entry mean/variance smoke check",
                      mean <= bound and abs(var - 1.0) <= bound,
                      f"|mean| = {mean:.2e}, var = {var:.5f}"))
    return out


def stats_suite(quick: bool = False) -> list[CheckResult]:
    out = []

    err = abs(stats.quad(lambda x: x * x, 0.0, 1.0, abs_tol=1e-12) - 1.0 / 3.0)
    split = abs(
        stats.quad(math.sin, 0.0, 2.0, abs_tol=1e-11)
        - stats.quad(math.sin, 0.0, 0.7, abs_tol=1e-11)
        - stats.quad(math.sin, 0.7, 2.0, abs_tol=1e-11)
    )
    out.append(_check("stats", "quadrature exactness and split invariance",
                      err <= 1e-12 and split <= 2e-11,
                      f"poly err = {err:.2e}, split err = {split:.2e}"))

    norm = abs(stats.arcsine_expectation(lambda t: 1.0) - 1.0)
    u = 0.5
    closed = (1.0 / u) * (1.0 - 1.0 / math.sqrt(1.0 - u * u))
    err = abs(stats.arcsine_expectation(lambda t: t / (1.0 + t * u)) - closed)
    out.append(_check("stats", "arcsine weight normalization and moment",
                      norm <= 1e-10 and err <= 1e-10,
                      f"norm err = {norm:.2e}, moment err = {err:.2e}"))

    n = 500
    sample = np.cos(np.pi * (1.0 - (np.arange(1, n + 1) - 0.5) / n))
    ks = stats.ks_distance(sample, laws.arcsine_cdf)
    out.append(_check("stats", "KS of exact quantiles is at most 1/n",
                      ks.statistic <= 1.0 / n + 1e-12, f"KS = {ks.statistic:.2e}"))

    ks0 = stats.ks_distance([0.0, 0.0, 0.0], laws.arcsine_cdf)
    out.append(_check("stats", "KS of a constant sample against the arcsine law",
                      abs(ks0.statistic - 0.5) <= 1e-12, f"KS = {ks0.statistic}"))

    rng = np.random.default_rng(20240820)
    uni = rng.uniform(0.0, 1.0, 10_000)
    ksu = stats.ks_distance(uni, lambda x: np.clip(x, 0.0, 1.0))
    out.append(_check("stats", "KS of a seeded uniform sample",
                      ksu.statistic <= 0.02, f"KS = {ksu.statistic:.4f}"))

    # Mixture with an atom of mass 0.4 at 0 over a uniform background.
    def mix_cdf(x):
        x = np.asarray(x, dtype=float)
        return np.clip(0.6 * np.clip((x + 1.0) / 2.0, 0.0, 1.0)
                       + 0.4 * (x >= 0.0), 0.0, 1.0)

    sample = np.array([-0.5, 0.0, 0.0, 0.5])
    ksm = stats.ks_distance(sample, mix_cdf, atoms=[(0.0, 0.4)])
    # By hand: F(-0.5)=0.15, F(0^-)=0.3, F(0)=0.7, F(0.5)=0.85; the empirical
    # CDF jumps 1/4 -> 3/4 at the tied zeros, so the sup deviation is
    # max(0.15, 0.05, 0.05, 0.15) = 0.15, attained at x = +/-0.5.
    out.append(_check("stats", "KS left limits at a reference atom",
                      abs(ksm.statistic - 0.15) <= 1e-12, f"KS = {ksm.statistic}"))

    base = rng.normal(0.0, 1.0, 200)
    k1 = stats.ks_distance(base, lambda x: np.clip((np.asarray(x) + 3) / 6, 0, 1))
    k2 = stats.ks_distance(base + 5.0,
                           lambda x: np.clip((np.asarray(x) - 5 + 3) / 6, 0, 1))
    out.append(_check("stats", "KS shift equivariance",
                      abs(k1.statistic - k2.statistic) <= 1e-12,
                      f"|diff| = {abs(k1.statistic - k2.statistic):.2e}"))
    return out


SUITES = {
    "roots": roots_suite,
    "theory": theory_suite,
    "ensemble": ensemble_suite,
    "stats": stats_suite,
}


def run_suites(names, quick: bool = False) -> list[CheckResult]:
    results = []
    for name in names:
        results.extend(SUITES[name](quick=quick))
    return results
