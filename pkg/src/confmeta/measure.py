"""Confidence measures (frequentist posteriors).

A :class:`ConfidenceMeasure` is defined by a nondecreasing distribution
function on an interval parameter space. Interval probabilities are CDF
differences; a region's probability is the sum over its pieces.

Discrete-data measures may not reach 0 and 1 inside the parameter space
(the valid binomial measure with ``x = n`` is flat at 0). The missing
mass is carried by the closed domain endpoints: a piece that contains
the upper endpoint receives everything the CDF has not yet assigned, a
piece that contains the lower endpoint receives ``cdf(lo)``. Interior
regions therefore use raw CDF differences while the whole space always
has probability one, and lower/upper levels stay dual.
"""

from __future__ import annotations

import math
import warnings

import numpy as np

from . import numerics
from .errors import (
    ArgumentError,
    CapabilityError,
    DomainError,
    MomentError,
    MultimodalityError,
    RangeError,
    AccuracyError,
)
from .numerics import DEFAULT_TOL, SeededStream, ToleranceConfig
from .regions import Interval, Region

__all__ = ["ConfidenceMeasure", "DeficientMeasureWarning", "from_pvalue_function"]


class DeficientMeasureWarning(UserWarning):
    """Sampling from a measure whose CDF does not span [0, 1]."""


_MEAN_TOL = ToleranceConfig(abs_tol=1e-11, rel_tol=1e-11, max_iter=500)


class ConfidenceMeasure:
    """Probability measure on an interval parameter space given by its CDF.

    Parameters
    ----------
    cdf : callable
        Vectorised nondecreasing map into [0, 1], continuous on the domain.
    domain : Interval
    density : callable, optional
        Derivative of ``cdf``; a central difference is used when absent.
    ppf : callable, optional
        Fast vectorised quantile function.
    sf : callable, optional
        ``1 - cdf`` computed without cancellation near 1.
    moment_order : float
        Highest finite moment (``inf`` when every moment exists).
    label : str
    """

    def __init__(self, cdf, domain: Interval = Interval(-math.inf, math.inf), *,
                 density=None, ppf=None, sf=None, moment_order=math.inf, label="", source=None):
        self._cdf = cdf
        self._sf = sf
        self.domain = domain
        self._density = density
        self._ppf = ppf
        self.moment_order = moment_order
        self.label = label
        self.source = source

    @classmethod
    def from_pvalue_function(cls, pf) -> "ConfidenceMeasure":
        """The measure whose CDF is the upper-tail p-value function."""
        density = pf.density if pf.has_density else None
        ppf = pf.ppf if pf.ppf(0.5) is not None else None
        return cls(pf.upper, pf.domain, density=density, ppf=ppf, sf=pf.survival,
                   moment_order=pf.moment_order, label=pf.provenance, source=pf)

    # basic evaluation -----------------------------------------------------

    def cdf(self, theta):
        out = np.clip(self._cdf(theta), 0.0, 1.0)
        return float(out) if np.ndim(out) == 0 else out

    def sf(self, theta):
        """Survival function ``1 - cdf``, accurate in the upper tail when supplied."""
        if self._sf is None:
            return 1.0 - self.cdf(theta)
        out = np.clip(self._sf(theta), 0.0, 1.0)
        return float(out) if np.ndim(out) == 0 else out

    def _end_value(self, end):
        t = self.domain.lo if end == "lo" else self.domain.hi
        if math.isinf(t):
            return 0.0 if t < 0 else 1.0
        return self.cdf(t)

    @property
    def mass_deficiency(self) -> float:
        """``1 - (cdf(sup) - cdf(inf))`` using the raw CDF at the endpoints."""
        return max(0.0, 1.0 - (self._end_value("hi") - self._end_value("lo")))

    def density(self, theta, step=1e-6):
        if self._density is not None:
            return self._density(theta)
        t = np.asarray(theta, dtype=float)
        lo = np.maximum(t - step, self.domain.lo)
        hi = np.minimum(t + step, self.domain.hi)
        return (self.cdf(hi) - self.cdf(lo)) / (hi - lo)

    # region probabilities -------------------------------------------------

    def _mass_below(self, t, closed):
        # mass of (-inf, t) when closed at t is requested by the piece, (-inf, t] otherwise
        d = self.domain
        if math.isinf(t):
            return 0.0
        if t == d.lo and closed:
            return 0.0
        return self.cdf(t)

    def _mass_upto(self, t, closed):
        d = self.domain
        if math.isinf(t):
            return 1.0
        if t == d.hi and closed:
            return 1.0
        return self.cdf(t)

    def prob(self, region: Region) -> float:
        """Confidence level of the hypothesis ``theta in region``."""
        if isinstance(region, Interval):
            region = Region([region])
        region.check_within(self.domain)
        total = 0.0
        for p in region:
            total += self._mass_upto(p.hi, not p.hi_open) - self._mass_below(p.lo, not p.lo_open)
        return min(1.0, max(0.0, total))

    def prob_interval(self, lo, hi) -> float:
        return self.prob(Region.interval(lo, hi))

    # quantiles ------------------------------------------------------------

    def quantile(self, p: float, tol: ToleranceConfig = DEFAULT_TOL) -> float:
        """Smallest ``theta`` with ``cdf(theta) >= p``, for ``0 < p < 1``."""
        if not 0.0 < p < 1.0:
            raise RangeError(f"quantile level must lie in (0, 1), got {p}", lower=0.0, upper=1.0)
        f_lo, f_hi = self._end_value("lo"), self._end_value("hi")
        if p > f_hi:
            raise RangeError(f"level {p} not attained; CDF ranges over [{f_lo:.6g}, {f_hi:.6g}]",
                             lower=f_lo, upper=f_hi)
        if self._ppf is not None:
            return float(self._ppf(p))
        if p <= f_lo:
            return float(self.domain.lo)
        start = 0.0
        if self.source is not None and hasattr(self.source, "_start"):
            start = self.source._start()
        return numerics.invert_monotone(self.cdf, p, self.domain.lo, self.domain.hi, tol,
                                        start=start)

    def median(self) -> float:
        return self.quantile(0.5)

    def _endpoint(self, p: float) -> float:
        # set-estimate endpoint: levels outside the attainable range map to the domain ends
        if p <= 0.0:
            return float(self.domain.lo)
        if p >= 1.0:
            return float(self.domain.hi)
        try:
            return self.quantile(p)
        except RangeError:
            return float(self.domain.hi)

    def set_estimate(self, rho: float, alpha: float = 0.0,
                     lower: "ConfidenceMeasure | None" = None) -> Interval:
        """Nested interval estimate with confidence coefficient ``rho``.

        Returns ``[q(alpha), q(alpha + rho)]`` where ``q`` is the quantile
        function. ``lower`` supplies a different measure for the left
        endpoint; for discrete data the valid estimator takes its left
        endpoint from the nonconservative CDF and vice versa (see
        :meth:`ConfidenceMetameasure.set_estimates`).
        """
        if not (0.0 <= alpha <= 1.0 and 0.0 <= rho <= 1.0):
            raise ArgumentError("rho and alpha must be probabilities")
        if rho == 1.0:
            return self.domain
        if alpha + rho > 1.0 + 1e-15:
            raise ArgumentError(f"alpha + rho must not exceed 1 (got {alpha + rho})")
        left = (lower if lower is not None else self)._endpoint(alpha)
        if rho == 0.0:
            return Interval(left, left, True, True)
        right = self._endpoint(alpha + rho)
        if right < left:
            # a discrete pair can cross; the estimate is then empty
            return Interval(left, left, True, True)
        return Interval(left, right)

    # moments --------------------------------------------------------------

    def _check_moment(self, order):
        if self.moment_order < order:
            raise MomentError(f"moment of order {order} does not exist for {self.label or self!r}")

    def mean(self) -> float:
        """Posterior mean, ``E[theta] = c + int_c^hi (1 - F) - int_lo^c F``."""
        self._check_moment(1)
        exact = getattr(self.source, "exact_mean", None)
        if exact is not None:
            return exact()
        d = self.domain
        if math.isfinite(d.lo) and math.isfinite(d.hi):
            c = 0.5 * (d.lo + d.hi)
        else:
            try:
                c = self.quantile(0.5)
            except RangeError:
                c = d.lo if math.isfinite(d.lo) else (d.hi if math.isfinite(d.hi) else 0.0)
        try:
            upper = numerics.integrate(lambda t: 1.0 - self.cdf(t), c, d.hi, _MEAN_TOL)
            lower = numerics.integrate(lambda t: self.cdf(t), d.lo, c, _MEAN_TOL)
        except AccuracyError as err:
            raise MomentError(f"mean integral failed to converge: {err}") from err
        return c + upper - lower

    def expect(self, g, tol: ToleranceConfig = ToleranceConfig(abs_tol=1e-10, rel_tol=1e-10)):
        """``int g dP`` for a smooth integrand by density quadrature.

        Point masses carried by the domain endpoints are added explicitly.
        """
        d = self.domain
        atom_lo = self._end_value("lo") if math.isfinite(d.lo) else 0.0
        atom_hi = 1.0 - self._end_value("hi") if math.isfinite(d.hi) else 0.0
        body_lo, body_hi = d.lo, d.hi
        try:
            core = numerics.integrate(lambda t: g(t) * self.density(t), body_lo, body_hi, tol,
                                      points=self._split_points())
        except AccuracyError as err:
            raise MomentError(f"expectation failed to converge: {err}") from err
        total = core
        if atom_lo > 0:
            total += atom_lo * g(d.lo)
        if atom_hi > 0:
            total += atom_hi * g(d.hi)
        return total

    def _split_points(self):
        try:
            return [self.quantile(p) for p in (0.1, 0.5, 0.9)]
        except RangeError:
            return None

    # mode -----------------------------------------------------------------

    def mode(self, bandwidth: float, grid_size: int = 2001) -> float:
        """Maximiser of the central-difference density estimate.

        The density is estimated as ``(F(t + h) - F(t - h)) / 2h`` with
        ``h = bandwidth``. A grid scan over the central 99.98% of the mass
        checks that the maximum is unique before golden-section refinement.
        """
        if not bandwidth > 0:
            raise ArgumentError("bandwidth must be positive")
        h = float(bandwidth)

        def dens(t):
            return (self.cdf(np.minimum(t + h, self.domain.hi))
                    - self.cdf(np.maximum(t - h, self.domain.lo))) / (2 * h)

        lo = max(self._endpoint(1e-4), self.domain.lo + h)
        hi = min(self._endpoint(1 - 1e-4), self.domain.hi - h)
        if not lo < hi:
            raise MultimodalityError("measure too concentrated for the given bandwidth")
        grid = np.linspace(lo, hi, grid_size)
        d = np.asarray(dens(grid), dtype=float)
        top = d.max()
        near = np.flatnonzero(d >= top * (1 - 1e-3))
        if near[-1] - near[0] + 1 != near.size or near.size > 0.05 * grid_size:
            raise MultimodalityError("density maximum is not unique")
        i = int(np.argmax(d))
        a, b = grid[max(i - 2, 0)], grid[min(i + 2, grid_size - 1)]
        invphi = (math.sqrt(5) - 1) / 2
        c1, c2 = b - invphi * (b - a), a + invphi * (b - a)
        f1, f2 = dens(c1), dens(c2)
        while b - a > 1e-10 * max(1.0, abs(a)):
            if f1 > f2:
                b, c2, f2 = c2, c1, f1
                c1 = b - invphi * (b - a)
                f1 = dens(c1)
            else:
                a, c1, f1 = c1, c2, f2
                c2 = a + invphi * (b - a)
                f2 = dens(c2)
        return 0.5 * (a + b)

    # sampling -------------------------------------------------------------

    def sample(self, k: int, stream: SeededStream) -> np.ndarray:
        """Inverse-CDF draws.

        Uniforms are drawn on the attainable CDF range, so a deficient
        measure is sampled conditionally on its interior mass; a
        :class:`DeficientMeasureWarning` says so. Sampling is refused when
        more than half the mass is missing.
        """
        if int(k) != k or k < 1:
            raise ArgumentError("k must be a positive integer")
        deficiency = self.mass_deficiency
        if deficiency > 0.5:
            raise CapabilityError(f"refusing to sample: mass deficiency {deficiency:.3g} > 0.5")
        f_lo, f_hi = self._end_value("lo"), self._end_value("hi")
        if deficiency > 0:
            warnings.warn(f"sampling a deficient measure (missing mass {deficiency:.3g})",
                          DeficientMeasureWarning, stacklevel=2)
        u = f_lo + (f_hi - f_lo) * stream.uniform(int(k))
        u = np.clip(u, np.nextafter(f_lo, 1.0), np.nextafter(f_hi, 0.0))
        if self._ppf is not None:
            return np.asarray(self._ppf(u), dtype=float)
        lo, hi = self.domain.lo, self.domain.hi
        if not math.isfinite(lo):
            lo = self.quantile(max(float(u.min()), 1e-300))
            lo -= 1e-9 * max(1.0, abs(lo))
        if not math.isfinite(hi):
            hi = self.quantile(float(u.max()))
            hi += 1e-9 * max(1.0, abs(hi))
        return numerics.invert_monotone_array(self.cdf, u, lo, hi)

    def __repr__(self):
        return f"ConfidenceMeasure({self.label or 'custom'}, domain={self.domain})"


def from_pvalue_function(pf) -> ConfidenceMeasure:
    return ConfidenceMeasure.from_pvalue_function(pf)
