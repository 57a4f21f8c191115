"""Combining independent confidence measures into one.

Each input CDF, evaluated at a fixed parameter value, is a p-value. Any
p-value combination method applied pointwise in ``theta`` gives a new
function of ``theta``; when that function is again a CDF it defines the
combined confidence measure.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Sequence

import numpy as np
from scipy import special as _special

from .errors import ArgumentError, CapabilityError
from .measure import ConfidenceMeasure
from .numerics import chi_squared_cdf, chi_squared_pdf, std_normal_cdf, std_normal_ppf

__all__ = ["CombinationRule", "combine", "INVERSE_NORMAL", "FISHER"]

INVERSE_NORMAL = "inverse_normal"
FISHER = "fisher"

_Z_MAX = 40.0
_MONOTONE_TOL = 1e-12


@dataclass(frozen=True)
class CombinationRule:
    kind: str = INVERSE_NORMAL
    weights: tuple[float, ...] | None = None

    def __post_init__(self):
        if self.kind not in (INVERSE_NORMAL, FISHER):
            raise ArgumentError(f"unknown combination rule {self.kind!r}")
        if self.weights is not None:
            if self.kind != INVERSE_NORMAL:
                raise ArgumentError("weights apply to the inverse-normal rule only")
            w = tuple(float(x) for x in self.weights)
            if any(not x > 0 for x in w):
                raise ArgumentError("weights must be positive")
            object.__setattr__(self, "weights", w)


def _grid(measures, size):
    m0 = measures[0]
    lo = min(m._endpoint(1e-6) for m in measures)
    hi = max(m._endpoint(1 - 1e-6) for m in measures)
    lo = max(lo, m0.domain.lo)
    hi = min(hi, m0.domain.hi)
    return np.linspace(lo, hi, size)


def _check_strict(measures, grid):
    for m in measures:
        F = np.asarray(m.cdf(grid))
        # ignore the tails, where a strictly increasing CDF can still round to equal values
        inner = (F > 1e-9) & (F < 1 - 1e-9)
        if np.any(np.diff(F[inner]) <= 0):
            raise CapabilityError(f"{m!r} has a flat stretch; combination needs strictly increasing CDFs")


def combine(measures: Sequence[ConfidenceMeasure], rule: CombinationRule | None = None, *,
            check_grid: int = 10_000) -> ConfidenceMeasure:
    """Combine independent confidence measures on a common domain.

    ``inverse_normal``:
        ``F(theta) = Phi(sum w_i Phi^-1(F_i(theta)) / sqrt(sum w_i^2))``.
    ``fisher``:
        ``F(theta) = chi2_{2k}(-2 sum log(1 - F_i(theta)))``; the result is
        checked for monotonicity on a ``check_grid``-point grid.

    A single input is returned unchanged.
    """
    measures = list(measures)
    rule = rule if rule is not None else CombinationRule()
    if not measures:
        raise ArgumentError("nothing to combine")
    dom = measures[0].domain
    if any(m.domain != dom for m in measures):
        raise ArgumentError("measures must share a common domain")
    k = len(measures)
    if rule.weights is not None and len(rule.weights) != k:
        raise ArgumentError(f"{len(rule.weights)} weights for {k} measures")
    if k == 1:
        return measures[0]
    grid = _grid(measures, min(check_grid, 2001))
    _check_strict(measures, grid)
    moment = min(m.moment_order for m in measures)

    if rule.kind == INVERSE_NORMAL:
        w = np.asarray(rule.weights if rule.weights is not None else (1.0,) * k)
        norm = math.sqrt(float(np.sum(w * w)))

        def z(m, t):
            # normal score from whichever tail is smaller, so both tails keep full precision
            F, S = np.asarray(m.cdf(t), dtype=float), np.asarray(m.sf(t), dtype=float)
            with np.errstate(divide="ignore"):
                out = np.where(F <= 0.5, std_normal_ppf(F), -std_normal_ppf(S))
            return np.clip(out, -_Z_MAX, _Z_MAX)

        def score(t):
            return sum(wi * z(m, t) for wi, m in zip(w, measures)) / norm

        def cdf(t):
            return std_normal_cdf(score(t))

        def sf(t):
            return std_normal_cdf(-score(t))

        def density(t):
            with np.errstate(invalid="ignore", divide="ignore"):
                s = score(t)
                acc = 0.0
                for wi, m in zip(w, measures):
                    acc = acc + wi * m.density(t) / _phi(z(m, t))
                out = _phi(s) * acc / norm
            return np.nan_to_num(out, nan=0.0, posinf=0.0)

        label = "inverse-normal combination"
    else:
        def stat(t):
            with np.errstate(divide="ignore"):
                return -2.0 * sum(np.log(np.asarray(m.sf(t), dtype=float)) for m in measures)

        def cdf(t):
            return chi_squared_cdf(stat(t), 2 * k)

        def sf(t):
            return _special.chdtrc(2 * k, stat(t))

        def density(t):
            with np.errstate(divide="ignore", invalid="ignore"):
                acc = sum(2.0 * m.density(t) / np.asarray(m.sf(t), dtype=float)
                          for m in measures)
                out = chi_squared_pdf(stat(t), 2 * k) * acc
            return np.nan_to_num(out, nan=0.0, posinf=0.0)

        label = "Fisher combination"
        fine = _grid(measures, check_grid)
        F = np.asarray(cdf(fine))
        # drops at rounding level are noise, not a failure of monotonicity
        if np.any(np.diff(F) < -_MONOTONE_TOL):
            raise CapabilityError("Fisher-combined function is not monotone in theta")

    return ConfidenceMeasure(cdf, dom, density=density, sf=sf, moment_order=moment, label=label)


def _phi(z):
    return np.exp(-0.5 * np.asarray(z) ** 2) / math.sqrt(2 * math.pi)
