"""Confidence metameasures: interval-valued confidence levels.

A metameasure pairs the valid and the nonconservative confidence measure
of dual set estimators. A hypothesis gets the closed interval spanned by
its two levels. The convex family ``(1 - D) P_valid + D P_noncons`` has
the same lower envelope, which is why only the two generators are stored.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field

import numpy as np

from .errors import ArgumentError
from .measure import ConfidenceMeasure
from .pvalue import BinomialFamily
from .regions import Interval, Region

__all__ = [
    "ProbabilityInterval",
    "ConfidenceMetameasure",
    "DualityReport",
    "metalevel",
    "indeterminacy",
    "reduce_mixture",
    "reduce_convex_mean",
    "duality_check",
]


@dataclass(frozen=True)
class ProbabilityInterval:
    lo: float
    hi: float

    def __post_init__(self):
        if not 0.0 <= self.lo <= self.hi <= 1.0:
            raise ArgumentError(f"not a probability interval: [{self.lo}, {self.hi}]")

    @property
    def width(self) -> float:
        return self.hi - self.lo

    def __contains__(self, p) -> bool:
        return self.lo <= p <= self.hi

    def __iter__(self):
        yield self.lo
        yield self.hi


class ConfidenceMetameasure:
    """Valid/nonconservative pair of confidence measures on a common domain."""

    def __init__(self, valid: ConfidenceMeasure, nonconservative: ConfidenceMeasure):
        if valid.domain != nonconservative.domain:
            raise ArgumentError("valid and nonconservative measures need a common domain")
        self.valid = valid
        self.nonconservative = nonconservative
        self.domain = valid.domain

    @classmethod
    def degenerate(cls, measure: ConfidenceMeasure) -> "ConfidenceMetameasure":
        return cls(measure, measure)

    @classmethod
    def binomial(cls, n: int, x: int) -> "ConfidenceMetameasure":
        """The ``C = 0`` / ``C = 1`` pair for ``x`` successes in ``n`` trials."""
        return cls(BinomialFamily(n, x, 0.0).confidence_measure(),
                   BinomialFamily(n, x, 1.0).confidence_measure())

    def is_degenerate(self, grid_size: int = 201, atol: float = 0.0) -> bool:
        if self.valid is self.nonconservative:
            return True
        lo, hi = self.domain.lo, self.domain.hi
        a = lo if np.isfinite(lo) else self.valid._endpoint(1e-6)
        b = hi if np.isfinite(hi) else self.valid._endpoint(1 - 1e-6)
        grid = np.linspace(a, b, grid_size)
        return bool(np.all(np.abs(self.valid.cdf(grid) - self.nonconservative.cdf(grid)) <= atol))

    def metalevel(self, region: Region) -> ProbabilityInterval:
        pv = self.valid.prob(region)
        pn = pv if self.nonconservative is self.valid else self.nonconservative.prob(region)
        return ProbabilityInterval(min(pv, pn), max(pv, pn))

    def lower(self, region: Region) -> float:
        return self.metalevel(region).lo

    def upper(self, region: Region) -> float:
        return self.metalevel(region).hi

    def indeterminacy(self, region: Region) -> float:
        return self.metalevel(region).width

    def reduce_mixture(self, D: float) -> ConfidenceMeasure:
        """``(1 - D) * valid + D * nonconservative``."""
        if not 0.0 <= D <= 1.0:
            raise ArgumentError(f"mixture weight must lie in [0, 1], got {D}")
        if D == 0.0:
            return self.valid
        if D == 1.0 or self.valid is self.nonconservative:
            return self.nonconservative
        v, nc = self.valid, self.nonconservative

        def cdf(t):
            return (1.0 - D) * v.cdf(t) + D * nc.cdf(t)

        def sf(t):
            return (1.0 - D) * v.sf(t) + D * nc.sf(t)

        def density(t):
            return (1.0 - D) * v.density(t) + D * nc.density(t)

        return ConfidenceMeasure(cdf, self.domain, density=density, sf=sf,
                                 moment_order=min(v.moment_order, nc.moment_order),
                                 label=f"mixture D={D:g}")

    def reduce_convex_mean(self) -> ConfidenceMeasure:
        """Lebesgue average of the convex family, i.e. the ``D = 1/2`` member."""
        return self.reduce_mixture(0.5)

    def set_estimates(self, rho: float, alpha: float = 0.0) -> tuple[Interval, Interval]:
        """(valid, nonconservative) nested set estimates at coefficient ``rho``.

        Dual estimators swap CDFs at the left endpoint: the valid interval
        is ``[q_noncons(alpha), q_valid(alpha + rho)]`` and the
        nonconservative one ``[q_valid(alpha), q_noncons(alpha + rho)]``.
        """
        v, nc = self.valid, self.nonconservative
        return (v.set_estimate(rho, alpha, lower=nc), nc.set_estimate(rho, alpha, lower=v))

    def __repr__(self):
        return f"ConfidenceMetameasure(valid={self.valid!r}, nonconservative={self.nonconservative!r})"


@dataclass
class DualityReport:
    max_violation: float
    duality_violation: float
    superadditivity_violation: float
    subadditivity_violation: float
    n_regions: int
    n_pairs: int
    details: list = field(default_factory=list, repr=False)

    def ok(self, tol: float = 1e-10) -> bool:
        return self.max_violation <= tol


def duality_check(mm: ConfidenceMetameasure, regions, pairs=None) -> DualityReport:
    """Check that the metalevel bounds form a coherent lower/upper pair.

    For each region ``A``: ``lo(A) + hi(complement A) = 1``. For disjoint
    pairs (all disjoint pairs among ``regions`` unless ``pairs`` is given):
    ``lo`` superadditive and ``hi`` subadditive. Reports the largest
    violation of each kind; never raises on a violation.
    """
    regions = list(regions)
    dual = 0.0
    for A in regions:
        comp = A.complement(mm.domain)
        v = abs(mm.lower(A) + mm.upper(comp) - 1.0)
        dual = max(dual, v)
    if pairs is None:
        pairs = [(a, b) for a, b in itertools.combinations(regions, 2) if a.is_disjoint(b)]
    sup = sub = 0.0
    n_pairs = 0
    for A, B in pairs:
        if not A.is_disjoint(B):
            continue
        n_pairs += 1
        U = A.union(B)
        sup = max(sup, mm.lower(A) + mm.lower(B) - mm.lower(U))
        sub = max(sub, mm.upper(U) - mm.upper(A) - mm.upper(B))
    return DualityReport(max(dual, sup, sub), dual, max(sup, 0.0), max(sub, 0.0),
                         len(regions), n_pairs)


# functional aliases


def metalevel(mm: ConfidenceMetameasure, region: Region) -> ProbabilityInterval:
    return mm.metalevel(region)


def indeterminacy(mm: ConfidenceMetameasure, region: Region) -> float:
    return mm.indeterminacy(region)


def reduce_mixture(mm: ConfidenceMetameasure, D: float) -> ConfidenceMeasure:
    return mm.reduce_mixture(D)


def reduce_convex_mean(mm: ConfidenceMetameasure) -> ConfidenceMeasure:
    return mm.reduce_convex_mean()
