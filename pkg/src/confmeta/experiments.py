"""Reproducible experiments: binomial level curves, coverage and consistency.

Each ``run_*`` function returns plain rows (lists of dicts) or a report
dict; :mod:`confmeta.cli` writes them out.
"""

from __future__ import annotations

import csv
import io
import math
from fractions import Fraction
from typing import Iterable, Sequence

import numpy as np

from .combine import CombinationRule, combine
from .errors import ArgumentError
from .measure import ConfidenceMeasure
from .metameasure import ConfidenceMetameasure
from .numerics import SeededStream, binomial_pmf
from .pvalue import BinomialFamily, NormalMeanFamily, NormNormalFamily, ks_uniform
from .regions import Region

__all__ = [
    "FIG1_COLUMNS",
    "COVERAGE_COLUMNS",
    "CONSISTENCY_COLUMNS",
    "fig1_row",
    "run_fig1",
    "run_coverage_audit",
    "run_consistency",
    "run_regions_sphere",
    "run_bioequiv",
    "run_combine_demo",
    "format_csv",
    "format_report",
]

FIG1_COLUMNS = ["n", "valid_level", "nonconservative_level", "half_corrected_level",
                "convex_mean_level"]
COVERAGE_COLUMNS = ["theta", "rho", "valid_coverage", "nonconservative_coverage"]
CONSISTENCY_COLUMNS = ["n", "mean_conf", "q05", "q95", "ks_pvalue_uniformity"]

DEFAULT_REGION = Region.interval(0.25, 0.75)


def _ceil_successes(n: int, theta) -> int:
    # exact ceiling of n * theta; a float 2/3 would push 3 * theta past 2
    return math.ceil(n * Fraction(theta).limit_denominator(10**9))


def fig1_row(n: int, theta=Fraction(2, 3), region: Region = DEFAULT_REGION) -> dict:
    x = _ceil_successes(n, theta)
    mm = ConfidenceMetameasure.binomial(n, x)
    return {
        "n": n,
        "valid_level": mm.valid.prob(region),
        "nonconservative_level": mm.nonconservative.prob(region),
        "half_corrected_level": BinomialFamily(n, x, 0.5).confidence_measure().prob(region),
        "convex_mean_level": mm.reduce_convex_mean().prob(region),
    }


def run_fig1(n_max: int = 100, theta=Fraction(2, 3), region: Region = DEFAULT_REGION) -> list[dict]:
    """Confidence levels of ``region`` for ``n = 1..n_max`` with ``x = ceil(n theta)``.

    Deterministic: the number of successes is fixed rather than sampled.
    """
    if n_max < 1:
        raise ArgumentError("n_max must be at least 1")
    if not 0 < theta < 1:
        raise ArgumentError("theta must lie in (0, 1)")
    return [fig1_row(n, theta, region) for n in range(1, int(n_max) + 1)]


def run_coverage_audit(n: int, theta_grid: Sequence[float], rho_grid: Sequence[float],
                       alpha: float | None = None) -> list[dict]:
    """Exact coverage of the dual binomial set estimators.

    For each ``(theta, rho)`` the coverage is the binomial-weighted count
    of outcomes ``x`` whose set estimate contains ``theta``. ``alpha``
    defaults to the central choice ``(1 - rho) / 2``.
    """
    theta_grid, rho_grid = list(theta_grid), list(rho_grid)
    if not theta_grid or not rho_grid:
        raise ArgumentError("theta and rho grids must be nonempty")
    if n < 1 or n > 10_000:
        raise ArgumentError("n must lie in 1..10000 for exact enumeration")
    mms = [ConfidenceMetameasure.binomial(n, x) for x in range(n + 1)]
    intervals = {}
    for rho in rho_grid:
        a = (1.0 - rho) / 2.0 if alpha is None else alpha
        intervals[rho] = [mm.set_estimates(rho, a) for mm in mms]
    rows = []
    for theta in theta_grid:
        pmf = [binomial_pmf(x, n, theta) for x in range(n + 1)]
        for rho in rho_grid:
            hits_v = [theta in iv for iv, _ in intervals[rho]]
            hits_n = [theta in iv for _, iv in intervals[rho]]
            rows.append({"theta": theta, "rho": rho,
                         "valid_coverage": _covered_mass(pmf, hits_v),
                         "nonconservative_coverage": _covered_mass(pmf, hits_n)})
    return rows


def _covered_mass(pmf, hits) -> float:
    # sum the smaller side so that full coverage comes out as exactly 1
    inside = math.fsum(p for p, h in zip(pmf, hits) if h)
    if inside <= 0.5:
        return inside
    return 1.0 - math.fsum(p for p, h in zip(pmf, hits) if not h)


def run_consistency(n_list: Iterable[int], theta_true: float, region: Region = Region.open(0, 1),
                    reps: int = 2000, seed: int = 42, sigma: float = 1.0,
                    point: float | None = None) -> tuple[list[dict], list[str]]:
    """Sampling behaviour of confidence levels and two-sided p-values.

    For each sample size, ``reps`` normal samples are drawn at
    ``theta_true``; the confidence level of ``region`` and the two-sided
    p-value of the point null ``point`` (default: ``theta_true``) are
    recorded. Replicate ``r`` at the ``i``-th sample size draws from
    ``SeededStream(seed).spawn(i).spawn(r)``.

    Returns the rows and a list of warnings (e.g. too few replicates).
    """
    if reps < 1:
        raise ArgumentError("reps must be positive")
    warns = []
    if reps < 100:
        warns.append(f"reps={reps} < 100: percentiles and KS distances are unreliable")
    point = theta_true if point is None else point
    null = Region.point(point)
    root = SeededStream(seed)
    rows = []
    for i, n in enumerate(n_list):
        sub = root.spawn(i)
        conf = np.empty(reps)
        pv = np.empty(reps)
        for r in range(reps):
            fam = NormalMeanFamily.simulate(theta_true, sigma, sub.spawn(r), n=int(n))
            conf[r] = fam.confidence_measure().prob(region)
            pv[r] = fam.two_sided_p(null)
        rows.append({"n": int(n), "mean_conf": float(conf.mean()),
                     "q05": float(np.quantile(conf, 0.05)), "q95": float(np.quantile(conf, 0.95)),
                     "ks_pvalue_uniformity": ks_uniform(pv)})
    return rows, warns


def run_regions_sphere(dim: int, norm_obs: float, theta_lo: float, theta_hi: float) -> dict:
    """Confidence that the mean's norm lies inside, between or beyond two spheres."""
    if not 0 < theta_lo < theta_hi:
        raise ArgumentError("need 0 < theta_lo < theta_hi")
    m = NormNormalFamily(dim, norm_obs).confidence_measure()
    below = m.prob(Region.interval(0.0, theta_lo))
    middle = m.prob(Region.interval(theta_lo, theta_hi, True, True))
    above = m.prob(Region.interval(theta_hi, math.inf))
    return {"dim": dim, "norm": norm_obs, "theta_lo": theta_lo, "theta_hi": theta_hi,
            "p_below": below, "p_between": middle, "p_above": above,
            "total": below + middle + above}


def run_bioequiv(theta0: float, delta: float = math.log(1.25),
                 family: NormalMeanFamily | ConfidenceMeasure | None = None) -> dict:
    """Three-way confidence split around an equivalence margin ``theta0 +/- delta``."""
    if not delta > 0:
        raise ArgumentError("delta must be positive")
    if family is None:
        raise ArgumentError("a fitted family is required")
    m = family if isinstance(family, ConfidenceMeasure) else family.confidence_measure()
    lo, hi = theta0 - delta, theta0 + delta
    left = m.prob(Region.interval(-math.inf, lo, True, True))
    mid = m.prob(Region.interval(lo, hi))
    right = m.prob(Region.interval(hi, math.inf, True, True))
    outside = left + right
    return {"theta0": theta0, "delta": delta, "p_below": left, "p_equivalent": mid,
            "p_above": right, "total": left + mid + right,
            "p_above_given_nonnegligible": right / outside if outside > 0 else math.nan}


def run_combine_demo(theta: float = 1.0, sigma: float = 2.0, n: int = 5, reps: int = 2000,
                     seed: int = 42, rule: CombinationRule | None = None) -> dict:
    """Combine two independent normal-mean studies and audit the result.

    The first replicate's combined 95% central interval is reported next
    to the single-study interval; across all replicates the combined CDF
    at the true ``theta`` should be uniform.
    """
    root = SeededStream(seed)
    pv = np.empty(reps)
    first = None
    for r in range(reps):
        s = root.spawn(r)
        a = NormalMeanFamily.simulate(theta, sigma, s.spawn(0), n=n).confidence_measure()
        b = NormalMeanFamily.simulate(theta, sigma, s.spawn(1), n=n).confidence_measure()
        c = combine([a, b], rule)
        pv[r] = c.cdf(theta)
        if first is None:
            first = (a, c)
    a, c = first
    ia, ic = a.set_estimate(0.95, 0.025), c.set_estimate(0.95, 0.025)
    return {"theta": theta, "sigma": sigma, "n": n, "reps": reps,
            "single_lo": ia.lo, "single_hi": ia.hi, "combined_lo": ic.lo, "combined_hi": ic.hi,
            "ks_combined_uniformity": ks_uniform(pv)}


# --------------------------------------------------------------------------
# output formatting


def _fmt(v) -> str:
    if isinstance(v, (bool, np.bool_)):
        return str(bool(v)).lower()
    if isinstance(v, (int, np.integer)):
        return str(int(v))
    if isinstance(v, (float, np.floating)):
        return "%.12g" % v
    return str(v)


def format_csv(rows: Sequence[dict], columns: Sequence[str], comments: Sequence[str] = ()) -> str:
    """UTF-8-ready CSV text, LF line endings, ``%.12g`` floats."""
    buf = io.StringIO()
    for c in comments:
        buf.write(f"# {c}\n")
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(columns)
    for row in rows:
        w.writerow([_fmt(row[c]) for c in columns])
    return buf.getvalue()


def format_report(report: dict) -> str:
    return "".join(f"{k}={_fmt(v)}\n" for k, v in report.items())
