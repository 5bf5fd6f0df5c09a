"""``golden-susy`` command line: spectra, concurrence curves, Bloch and coherent
state reports, and the identity-verification suite.

Output goes to stdout as CSV (fixed header) or JSON (stable field order).
Exit codes: 0 pass, 1 identity failure, 2 configuration error, 3 tolerance
breach.  ``GOLDEN_SUSY_TOL`` overrides the default tolerance.
"""

from __future__ import annotations

import csv
import io
import json
import math
import os
import sys

import click
import numpy as np

from . import coherent as co
from . import entangle as en
from . import fock, susy, verify
from .golden import PHI_FLOAT, SILVER_FLOAT, fib_divisor

EXIT_OK, EXIT_IDENTITY, EXIT_CONFIG, EXIT_TOLERANCE = 0, 1, 2, 3
DEFAULT_TOL = 1e-10
TOL_ENV = "GOLDEN_SUSY_TOL"


class ConfigError(click.UsageError):
    exit_code = EXIT_CONFIG


def _default_tol() -> float:
    raw = os.environ.get(TOL_ENV)
    if raw is None:
        return DEFAULT_TOL
    try:
        return float(raw)
    except ValueError:
        raise ConfigError(f"{TOL_ENV}={raw!r} is not a number") from None


def _resolve_tol(tol: float | None) -> float:
    tol = _default_tol() if tol is None else tol
    if not (tol > 0 and math.isfinite(tol)):
        raise ConfigError(f"tol must be positive, got {tol!r}")
    return tol


def _cell(v) -> str:
    if isinstance(v, bool):
        return "true" if v else "false"
    if isinstance(v, float):
        return repr(v)
    if v is None:
        return ""
    return str(v)


def emit(rows: list[dict], fmt: str, columns: list[str]) -> None:
    """Write rows as CSV (header ``columns``) or as a JSON list of objects."""
    if fmt == "json":
        click.echo(json.dumps([{c: r[c] for c in columns} for r in rows], indent=1))
        return
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(columns)
    for r in rows:
        w.writerow([_cell(r[c]) for c in columns])
    click.echo(buf.getvalue(), nl=False)


def emit_object(obj: dict) -> None:
    click.echo(json.dumps(obj, indent=1))


_format = click.option("--format", "fmt", type=click.Choice(["csv", "json"]), default="csv", show_default=True)
_tol = click.option("--tol", type=float, default=None, help=f"Tolerance (default 1e-10 or ${TOL_ENV}).")


@click.group()
def main():
    """Golden-ratio SUSY oscillator hierarchy toolkit."""


# spectrum -------------------------------------------------------------------

SPECTRUM_COLUMNS = ["k", "n", "kind", "e_exact", "energy", "closed_form"]


def _closed_form_level(k: int, n: int, kind: str) -> float:
    """Float closed form of the level in units of hbar*omega/2."""
    if kind == "boson":
        return fock.spectrum_closed_form(k, n, 2.0)

    def binet(m):
        if k == 0:
            return float(m)
        p, q = PHI_FLOAT**k, SILVER_FLOAT**k
        return (p**m - q**m) / (p - q)

    if kind == "susy":
        return binet(n)
    return binet(n + 1) - binet(n)


def spectrum_rows(ks, n_max: int, kind: str, hbar_omega: float) -> list[dict]:
    rows = []
    half = 0.5 * hbar_omega
    for k in ks:
        table = fock.spectrum_table(k, n_max, kind, hbar_omega)
        for n, e in enumerate(table.exact):
            rows.append({
                "k": k, "n": n, "kind": kind, "e_exact": e,
                "energy": half * e, "closed_form": half * _closed_form_level(k, n, kind),
            })
    return rows


@main.command()
@click.option("--k", "ks", type=int, multiple=True, help="Hierarchy level (repeatable; default 1..5).")
@click.option("--n-max", type=int, default=5, show_default=True)
@click.option("--kind", type=click.Choice(["susy", "boson", "fermionic"]), default="susy", show_default=True)
@click.option("--hbar-omega", type=float, default=1.0, show_default=True)
@_format
def spectrum(ks, n_max, kind, hbar_omega, fmt):
    """Energy levels; e_exact is the integer level in units of hbar*omega/2."""
    ks = ks or (1, 2, 3, 4, 5)
    if n_max < 0 or any(k < 0 for k in ks):
        raise ConfigError("k and n-max must be non-negative")
    try:
        rows = spectrum_rows(ks, n_max, kind, hbar_omega)
    except fock.InvalidLevelError as exc:
        raise ConfigError(str(exc)) from None
    emit(rows, fmt, SPECTRUM_COLUMNS)


# concurrence ----------------------------------------------------------------

CONCURRENCE_COLUMNS = ["k", "abs_beta", "c_closed", "c_gram", "delta"]


def concurrence_rows(ks, family: str, n_beta: int, beta_max: float | None) -> list[dict]:
    rows = []
    for k in ks:
        top = beta_max if beta_max is not None else (1.5 if k == 0 else 1.0)
        for r in np.linspace(0.0, top, n_beta):
            r = float(r)
            c_closed = en.coherent_concurrence_closed(k, r, family)
            c_gram = en.concurrence_gram(co.super_coherent(family + "+", k, r).state)
            rows.append({"k": k, "abs_beta": r, "c_closed": c_closed, "c_gram": c_gram, "delta": abs(c_closed - c_gram)})
    return rows


@main.command()
@click.option("--k", "ks", type=int, multiple=True, help="Hierarchy level (repeatable; default 0..3).")
@click.option("--family", type=click.Choice(["L", "B"]), default="L", show_default=True)
@click.option("--n-beta", type=int, default=20, show_default=True)
@click.option("--beta-max", type=float, default=None, help="Largest |beta| (default 1.5 for k=0, else 1).")
@_tol
@_format
def concurrence(ks, family, n_beta, beta_max, tol, fmt):
    """Closed-form vs Gram-determinant concurrence of super-coherent states."""
    tol = _resolve_tol(tol)
    ks = ks or (0, 1, 2, 3)
    if n_beta < 1 or any(k < 0 for k in ks):
        raise ConfigError("n-beta must be >= 1 and k non-negative")
    try:
        rows = concurrence_rows(ks, family, n_beta, beta_max)
    except (ValueError, fock.CutoffError) as exc:
        raise ConfigError(str(exc)) from None
    emit(rows, fmt, CONCURRENCE_COLUMNS)
    worst = max(rows, key=lambda r: r["delta"])
    if worst["delta"] > tol:
        click.echo(f"tolerance breach: {json.dumps(worst)}", err=True)
        sys.exit(EXIT_TOLERANCE)


# verify ---------------------------------------------------------------------

VERIFY_COLUMNS = ["name", "passed", "exact", "max_residual", "threshold", "safe_rows"]


@main.command(name="verify")
@click.option("--k", "k_max", type=int, default=4, show_default=True, help="Largest k for operator checks.")
@click.option("--dim", type=int, default=16, show_default=True)
@click.option("--seed", type=int, default=0, show_default=True)
@click.option("--hbar-omega", type=float, default=1.0, show_default=True)
@click.option("--inject-fault", type=click.Choice(list(verify.FAULTS)), default=None, hidden=True)
@_tol
@click.option("--format", "fmt", type=click.Choice(["csv", "json"]), default="json", show_default=True)
def cmd_verify(k_max, dim, seed, hbar_omega, inject_fault, tol, fmt):
    """Run every identity check; exit 1 listing failures."""
    tol = _resolve_tol(tol)
    if k_max < 0:
        raise ConfigError("k must be non-negative")
    try:
        cfg = verify.VerifyConfig(tol=tol, seed=seed, k_max=k_max, d=dim, hbar_omega=hbar_omega, fault=inject_fault)
    except ValueError as exc:
        raise ConfigError(str(exc)) from None
    results = verify.run_checks(cfg)
    rep = verify.report(results, cfg)
    if fmt == "json":
        emit_object(rep)
    else:
        emit([r.as_dict() for r in results], "csv", VERIFY_COLUMNS)
    if rep["failures"]:
        click.echo("failed: " + ", ".join(rep["failures"]), err=True)
        sys.exit(EXIT_IDENTITY)


# bloch ----------------------------------------------------------------------

def bloch_report(n: int, k: int, theta: float, phi: float, d: int) -> dict:
    pt = susy.BlochPoint(theta, phi)
    s = susy.super_number_state(n, k, pt, d)
    f_op = np.diag(susy.super_fib_table(k, d))
    f_n = fib_divisor(k, n)
    v = s.vector
    c = en.concurrence_gram(s)
    xi = pt.stereographic()
    return {
        "n": n,
        "k": k,
        "theta": theta,
        "phi": phi,
        "dim": d,
        "eigenvalue": f_n,
        "eigen_residual": float(np.linalg.norm(f_op @ v - f_n * v)),
        "concurrence": c,
        "entropy": en.von_neumann(en.reduce_fermion(s)),
        "xi_re": xi.real,
        "xi_im": xi.imag,
    }


@main.command()
@click.option("--n", type=int, default=1, show_default=True, help="Super-particle number.")
@click.option("--k", type=int, default=1, show_default=True)
@click.option("--theta", type=float, default=math.pi / 2, show_default=True)
@click.option("--phi", type=float, default=0.0, show_default=True)
@click.option("--dim", type=int, default=None, help="Boson cutoff (default n + 1).")
def bloch(n, k, theta, phi, dim):
    """Report on a super-number eigenstate on the super-Bloch sphere."""
    d = n + 1 if dim is None else dim
    if k < 0:
        raise ConfigError("k must be non-negative")
    try:
        rep = bloch_report(n, k, theta, phi, d)
    except (ValueError, fock.CutoffError) as exc:
        raise ConfigError(str(exc)) from None
    emit_object(rep)


# coherent -------------------------------------------------------------------

@main.command()
@click.option("--family", type=click.Choice(list(co.FAMILIES)), default="L+", show_default=True)
@click.option("--k", type=int, default=1, show_default=True)
@click.option("--beta", type=str, default="0.5", show_default=True, help="Complex eigenvalue, e.g. 0.3+0.4j.")
@click.option("--dim", type=int, default=None, help="Fixed cutoff (default adaptive).")
@_tol
def coherent(family, k, beta, dim, tol):
    """Report on a super-coherent state; exit 3 if its eigen-residual breaches 100*tol."""
    tol = _resolve_tol(tol)
    try:
        b = complex(beta.replace(" ", ""))
    except ValueError:
        raise ConfigError(f"cannot parse beta={beta!r}") from None
    if k < 0:
        raise ConfigError("k must be non-negative")
    try:
        sc = co.super_coherent(family, k, b, dim)
    except co.NormalizerMismatch as exc:
        click.echo(str(exc), err=True)
        sys.exit(EXIT_IDENTITY)
    except (ValueError, fock.CutoffError) as exc:
        raise ConfigError(str(exc)) from None
    rep = {
        "family": family,
        "k": k,
        "beta_re": b.real,
        "beta_im": b.imag,
        "dim": sc.dim,
        "norm_sq_closed": sc.norm_sq_closed,
        "norm_sq_direct": sc.norm_sq_direct,
        "residual": sc.residual,
        "concurrence": en.concurrence_gram(sc.state),
    }
    emit_object(rep)
    # super-coherent residuals are judged at 1e-8 for the default tol
    if sc.residual > 100 * tol:
        click.echo(f"tolerance breach: residual {sc.residual!r}", err=True)
        sys.exit(EXIT_TOLERANCE)


if __name__ == "__main__":
    main()
