"""Command-line surface: theory evaluation, simulation, verification.

Every command emits plot-ready delimited output (CSV) or JSON with
17-significant-digit floats, so identical flags always produce identical
bytes; ``--plot`` additionally renders a matplotlib figure next to the
delimited output.
"""

from __future__ import annotations

import json
import math
import sys
import time
from dataclasses import dataclass

import click
import numpy as np

from . import ensemble, laws, roots, verify
from .stats import ks_distance

DEFAULT_SEED = 0x5EED


@dataclass(frozen=True)
class RunConfig:
    command: str
    params: dict


def _fmt(v: float) -> str:
    return format(float(v), ".17g")


def _emit(text: str, path: str) -> None:
    if path == "-":
        click.echo(text, nl=False)
    else:
        with open(path, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(text)


def _csv(header: str, rows) -> str:
    lines = [header]
    lines.extend(",".join(_fmt(v) for v in row) for row in rows)
    return "\n".join(lines) + "\n"


def _json(payload: dict) -> str:
    return json.dumps(payload, indent=2) + "\n"


def _grid(c: float, xmin, xmax, points):
    if points < 2:
        raise click.BadParameter("need at least 2 grid points")
    a = roots.support_endpoint(c)
    if xmin is None:
        xmin = -a
    if xmax is None:
        xmax = a
    if not xmin < xmax:
        raise click.BadParameter(f"need xmin < xmax, got [{xmin}, {xmax}]")
    return np.linspace(xmin, xmax, points)


def _positive_c(ctx, param, value):
    if value is not None and not value > 0:
        raise click.BadParameter("c must be positive")
    return value


@click.group()
def main():
    """Limiting spectral distribution of symmetrized lag-tau covariance matrices."""


@main.command()
@click.option("--c", "c", type=float, required=True, callback=_positive_c,
              help="Concentration ratio of the limit law.")
@click.option("--xmin", type=float, default=None, help="Grid start (default -a).")
@click.option("--xmax", type=float, default=None, help="Grid end (default a).")
@click.option("--points", type=int, default=401, show_default=True)
@click.option("--output", default="-", show_default=True)
@click.option("--format", "fmt", type=click.Choice(["csv", "json"]), default="csv",
              show_default=True)
@click.option("--plot", type=click.Path(), default=None,
              help="Also render the density curve to this PNG.")
def density(c, xmin, xmax, points, output, fmt, plot):
    """Tabulate the limit density on an x grid (columns: x,phi)."""
    xs = _grid(c, xmin, xmax, points)
    phi = [laws.phi_density(x, c) for x in xs]
    if fmt == "csv":
        _emit(_csv("x,phi", zip(xs, phi)), output)
    else:
        _emit(_json({"command": "density", "c": c,
                     "x": [float(x) for x in xs], "phi": phi}), output)
    if plot:
        from . import plots
        plots.save_density_plot(xs, phi, c, plot)


@main.command()
@click.option("--c", "c", type=float, required=True, callback=_positive_c)
@click.option("--xmin", type=float, default=None)
@click.option("--xmax", type=float, default=None)
@click.option("--points", type=int, default=401, show_default=True)
@click.option("--output", default="-", show_default=True)
@click.option("--format", "fmt", type=click.Choice(["csv", "json"]), default="csv",
              show_default=True)
@click.option("--plot", type=click.Path(), default=None)
def cdf(c, xmin, xmax, points, output, fmt, plot):
    """Tabulate the limit CDF (columns: x,F); duplicates x = 0 when c > 1."""
    xs = _grid(c, xmin, xmax, points)
    atom = max(0.0, 1.0 - 1.0 / c)
    rows = []
    inserted = atom == 0.0 or not (xs[0] < 0.0 <= xs[-1])
    for x in xs:
        if not inserted and x >= 0.0:
            left = 0.5 * min(1.0, 1.0 / c)
            rows.append((0.0, left))
            rows.append((0.0, left + atom))
            inserted = True
            if x == 0.0:
                continue
        rows.append((x, laws.lsd_cdf(x, c)))
    if fmt == "csv":
        _emit(_csv("x,F", rows), output)
    else:
        _emit(_json({"command": "cdf", "c": c,
                     "x": [r[0] for r in rows], "F": [r[1] for r in rows]}), output)
    if plot:
        from . import plots
        plots.save_cdf_plot([r[0] for r in rows], [r[1] for r in rows], c, plot)


@main.command()
@click.option("--c", "c", type=float, required=True, callback=_positive_c)
@click.option("--re", "re", type=float, required=True, help="Re z.")
@click.option("--im", "im", type=float, required=True, help="Im z (must be > 0).")
@click.option("--output", default="-", show_default=True)
def stieltjes(c, re, im, output):
    """Evaluate the Stieltjes transform at z = re + i*im (JSON)."""
    if not im > 0.0:
        raise click.BadParameter("im must be positive (upper half-plane)")
    z = complex(re, im)
    pt = laws.stieltjes(z, c)
    _emit(_json({
        "command": "stieltjes",
        "c": c,
        "re": re,
        "im": im,
        "re_m": pt.m.real,
        "im_m": pt.m.imag,
        "residual": pt.residual,
        "abs_m_plus_inv_z": abs(pt.m + 1.0 / z),
    }), output)


@main.command()
@click.option("--N", "N", type=int, required=True, help="Matrix dimension.")
@click.option("--T", "T", type=int, required=True, help="Number of lag pairs.")
@click.option("--tau", type=int, default=1, show_default=True)
@click.option("--dist", default="complex-gaussian", show_default=True,
              help='Entry law, e.g. "real-gaussian" or "pareto-symmetric(2.1)".')
@click.option("--seed", type=int, default=DEFAULT_SEED, show_default=True)
@click.option("--replicates", type=int, default=1, show_default=True)
@click.option("--threads", type=int, default=1, show_default=True,
              help="Replicate-level parallelism (results are order-independent).")
@click.option("--max-dim", type=int, default=ensemble.DEFAULT_MAX_DIM,
              show_default=True, help="Dense-matrix size cap.")
@click.option("--output", default="-", show_default=True,
              help="Eigenvalue CSV destination.")
@click.option("--summary", "summary_path", default="-", show_default=True,
              help="JSON summary destination.")
@click.option("--plot", type=click.Path(), default=None,
              help="Histogram + limit-density overlay PNG.")
def simulate(N, T, tau, dist, seed, replicates, threads, max_dim, output,
             summary_path, plot):
    """Simulate the ensemble, emit pooled eigenvalues and a KS summary."""
    try:
        law = ensemble.EntryDistribution.parse(dist)
    except ValueError as exc:
        raise click.BadParameter(str(exc))
    if tau < 0 or N < 1 or T < 1:
        raise click.BadParameter("need N >= 1, T >= 1, tau >= 0")
    t0 = time.perf_counter()
    eigs = ensemble.simulate_esd(N, T, tau, law, seed,
                                 replicates=replicates, threads=threads,
                                 max_dim=max_dim)
    c_hat = N / (T + tau)
    atom_expected = max(0.0, 1.0 - 1.0 / c_hat)
    atom_observed = float(np.mean(np.abs(eigs) <= 1e-9))
    if tau == 0:
        ref = lambda x: np.array([laws.mp_cdf(v, c_hat) for v in np.atleast_1d(x)])
        atoms = [(0.0, laws.mp_atom(c_hat))] if c_hat > 1 else []
        ref_pdf = lambda x: laws.mp_pdf(x, c_hat) / max(1e-300, min(1.0, 1.0 / c_hat))
    else:
        ref = laws.lsd_cdf_interpolant(c_hat)
        atoms = [(0.0, atom_expected)] if atom_expected > 0 else []
        ref_pdf = lambda x: laws.phi_density(x, c_hat) / min(1.0, 1.0 / c_hat)
    ks = ks_distance(eigs, ref, atoms=atoms)
    runtime_ms = (time.perf_counter() - t0) * 1000.0
    _emit(_csv("eigenvalue", ((v,) for v in eigs)), output)
    _emit(_json({
        "command": "simulate",
        "c": c_hat,
        "c_hat": c_hat,
        "tau": tau,
        "N": N,
        "T": T,
        "dist": str(law),
        "seed": seed,
        "replicates": replicates,
        "ks": ks.statistic,
        "atom_expected": atom_expected,
        "atom_observed": atom_observed,
        "runtime_ms": runtime_ms,
    }), summary_path)
    if plot:
        from . import plots
        plots.save_spectrum_plot(eigs, ref_pdf, c_hat, tau, plot)


@main.command()
@click.option("--n", type=int, required=True, help="Band matrix dimension.")
@click.option("--tau", type=int, required=True)
@click.option("--output", default="-", show_default=True)
@click.option("--plot", type=click.Path(), default=None)
def cmatrix(n, tau, output, plot):
    """Closed-form vs dense-solver band spectrum (columns: closed_form,solver)."""
    if n < 1 or tau < 1:
        raise click.BadParameter("need n >= 1 and tau >= 1")
    closed = ensemble.c_spectrum_closed(n, tau)
    solver = ensemble.hermitian_eigs(ensemble.build_c(n, tau))
    _emit(_csv("closed_form,solver", zip(closed, solver)), output)
    if plot:
        from . import plots
        plots.save_cmatrix_plot(closed, solver, plot)


@main.command(name="verify")
@click.option("--suite", type=click.Choice(["roots", "theory", "ensemble",
                                            "stats", "all"]),
              default="all", show_default=True)
@click.option("--quick", is_flag=True, default=False,
              help="Trimmed grids for faster feedback.")
def verify_cmd(suite, quick):
    """Run the module invariant suites; exit 0 iff every check passes."""
    names = list(verify.SUITES) if suite == "all" else [suite]
    results = verify.run_suites(names, quick=quick)
    failed = 0
    for r in results:
        status = "PASS" if r.passed else "FAIL"
        click.echo(f"[{status}] {r.suite}: {r.name} ({r.detail})")
        failed += not r.passed
    click.echo(f"{len(results) - failed}/{len(results)} checks passed")
    sys.exit(0 if failed == 0 else 1)


if __name__ == "__main__":  # pragma: no cover
    main()
