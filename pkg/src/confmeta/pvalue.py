"""Upper-tail p-value functions and the built-in families.

A p-value function ``theta -> p_x^+(theta)`` is nondecreasing in ``theta``
and therefore doubles as the distribution function of a confidence
measure. The nested set estimator is never stored; set estimates are
derived from the function by inversion.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy import special as _special
from scipy import stats as _stats

from . import numerics
from .errors import ArgumentError, CapabilityError, DomainError, ParameterDomainError, RangeError
from .numerics import DEFAULT_TOL, SeededStream, ToleranceConfig
from .regions import Interval, Region

__all__ = [
    "PValueFunction",
    "NormalMeanFamily",
    "BinomialFamily",
    "NormNormalFamily",
    "AuditReport",
    "exactness_audit",
    "ks_uniform",
]

REAL_LINE = Interval(-math.inf, math.inf)
UNIT_INTERVAL = Interval(0.0, 1.0)

EXACT = "exact"
APPROXIMATE = "approximate"


class PValueFunction:
    """Upper-tail p-value function of a scalar interest parameter.

    Parameters
    ----------
    upper_tail : callable
        Vectorised map ``theta -> p_x^+(theta)``, nondecreasing.
    domain : Interval
        Parameter space.
    exactness : {"exact", "approximate"}
    provenance : str
        Free-text description of the data the function was computed from.
    density : callable, optional
        Derivative of ``upper_tail``. Used for expectations and modes.
    """

    #: highest finite moment of the induced measure (``inf`` if all exist)
    moment_order = math.inf

    def __init__(self, upper_tail, domain: Interval = REAL_LINE, exactness=APPROXIMATE,
                 provenance="", density=None):
        if exactness not in (EXACT, APPROXIMATE):
            raise ArgumentError(f"exactness must be {EXACT!r} or {APPROXIMATE!r}")
        self._upper_fn = upper_tail
        self._density_fn = density
        self.domain = domain
        self.exactness = exactness
        self.provenance = provenance

    # evaluation -----------------------------------------------------------

    def _upper(self, theta):
        return self._upper_fn(theta)

    def upper(self, theta):
        """``p_x^+(theta)``; no domain check, vectorised."""
        out = np.clip(self._upper(theta), 0.0, 1.0)
        return float(out) if np.ndim(out) == 0 else out

    def lower(self, theta):
        """``p_x^-(theta) = 1 - p_x^+(theta)``."""
        return 1.0 - self.upper(theta)

    def survival(self, theta):
        """``1 - upper(theta)``; families override with a form accurate near 1."""
        return self.lower(theta)

    def evaluate(self, theta, tail="upper"):
        t = np.asarray(theta, dtype=float)
        if np.any([x not in self.domain for x in np.atleast_1d(t)]):
            raise DomainError(f"theta={theta} outside parameter space {self.domain}")
        if tail == "upper":
            return self.upper(theta)
        if tail == "lower":
            return self.lower(theta)
        raise ArgumentError(f"tail must be 'upper' or 'lower', got {tail!r}")

    __call__ = upper

    @property
    def has_density(self) -> bool:
        return self._density_fn is not None or type(self)._density is not PValueFunction._density

    def _density(self, theta):
        if self._density_fn is None:
            raise CapabilityError("no density supplied for this p-value function")
        return self._density_fn(theta)

    def density(self, theta):
        return self._density(theta)

    def ppf(self, u):
        """Vectorised inverse; families with a closed form override this."""
        return None

    def _limit(self, end):
        # value (or limit) of upper_tail at a domain endpoint
        t = self.domain.lo if end == "lo" else self.domain.hi
        if math.isinf(t):
            return 0.0 if t < 0 else 1.0
        return self.upper(t)

    def _start(self):
        return 0.0

    # inversion ------------------------------------------------------------

    def invert(self, alpha, tol: ToleranceConfig = DEFAULT_TOL):
        """Smallest ``theta`` with ``p_x^+(theta) >= alpha``.

        Raises :class:`RangeError` carrying the attainable extremes when
        ``alpha`` is above every value of the function.
        """
        if not 0.0 <= alpha <= 1.0:
            raise ArgumentError(f"alpha must be a probability, got {alpha}")
        lo, hi = self.domain.lo, self.domain.hi
        f_lo, f_hi = self._limit("lo"), self._limit("hi")
        if alpha <= f_lo:
            return float(lo)
        if alpha > f_hi:
            raise RangeError(f"level {alpha} not attained: p-value function ranges over "
                             f"[{f_lo:.6g}, {f_hi:.6g}]", lower=f_lo, upper=f_hi)
        if math.isinf(hi) and alpha >= 1.0:
            return math.inf
        return numerics.invert_monotone(self.upper, alpha, lo, hi, tol, start=self._start())

    # tests ----------------------------------------------------------------

    def two_sided_p(self, region: Region) -> float:
        """``2 sup min(p^-, p^+)`` over the region, clamped to [0, 1].

        The supremum is taken over the closure of each piece, using that
        ``min(p^-, p^+)`` rises to 1/2 at the median and falls after it.
        """
        if region.is_empty:
            raise ArgumentError("two-sided p-value of an empty region")
        region.check_within(self.domain)
        best = 0.0
        for piece in region:
            fa = self.upper(piece.lo) if math.isfinite(piece.lo) else 0.0
            fb = self.upper(piece.hi) if math.isfinite(piece.hi) else 1.0
            if fa >= 0.5:
                v = 1.0 - fa
            elif fb <= 0.5:
                v = fb
            else:
                v = 0.5
            best = max(best, v)
        return min(1.0, 2.0 * best)

    # conversion -----------------------------------------------------------

    def confidence_measure(self):
        from .measure import ConfidenceMeasure

        return ConfidenceMeasure.from_pvalue_function(self)

    def __repr__(self):
        return f"{type(self).__name__}({self.provenance or 'custom'}, {self.exactness})"


class NormalMeanFamily(PValueFunction):
    """Student-t p-value function for a normal mean with unknown variance.

    The induced measure is the law of ``xbar + T_{n-1} * sd / sqrt(n)``.
    """

    def __init__(self, n: int, sample_mean: float, sample_sd: float):
        if n != int(n) or n < 2:
            raise ParameterDomainError(f"NormalMeanFamily needs n >= 2, got {n}")
        if not sample_sd > 0:
            raise ParameterDomainError("sample_sd must be positive")
        self.n = int(n)
        self.sample_mean = float(sample_mean)
        self.sample_sd = float(sample_sd)
        self.df = self.n - 1
        self.scale = self.sample_sd / math.sqrt(self.n)
        super().__init__(None, REAL_LINE, EXACT,
                         f"normal mean: n={n}, mean={sample_mean:g}, sd={sample_sd:g}")

    @property
    def moment_order(self):
        # t with df degrees of freedom has moments of order < df
        return self.df - 1

    def _upper(self, theta):
        return numerics.student_t_cdf((np.asarray(theta, dtype=float) - self.sample_mean)
                                      / self.scale, self.df)

    def survival(self, theta):
        z = (np.asarray(theta, dtype=float) - self.sample_mean) / self.scale
        return numerics.student_t_cdf(-z, self.df)

    def _density(self, theta):
        z = (np.asarray(theta, dtype=float) - self.sample_mean) / self.scale
        return numerics.student_t_pdf(z, self.df) / self.scale

    def ppf(self, u):
        return self.sample_mean + self.scale * _special.stdtrit(self.df, np.asarray(u, dtype=float))

    def invert(self, alpha, tol=DEFAULT_TOL):
        if not 0.0 <= alpha <= 1.0:
            raise ArgumentError(f"alpha must be a probability, got {alpha}")
        return float(self.ppf(alpha))

    def _start(self):
        return self.sample_mean

    @classmethod
    def from_data(cls, data):
        data = np.asarray(data, dtype=float)
        return cls(data.size, float(data.mean()), float(data.std(ddof=1)))

    @classmethod
    def simulate(cls, theta, nuisance, stream: SeededStream, *, n: int = 5):
        """Family computed from ``n`` draws of N(theta, nuisance**2)."""
        return cls.from_data(stream.normal(theta, nuisance, n))


class BinomialFamily(PValueFunction):
    """C-corrected upper-tail binomial probabilities.

    ``p(theta) = P_theta(X > x) + C * P_theta(X = x)``. ``C = 0`` gives the
    valid member, ``C = 1`` the nonconservative member and ``C = 1/2`` the
    half-corrected approximation.
    """

    def __init__(self, n: int, x: int, C: float = 0.5):
        if n != int(n) or n < 1:
            raise ParameterDomainError(f"n must be a positive integer, got {n}")
        if x != int(x) or not 0 <= x <= n:
            raise ParameterDomainError(f"x must be an integer in [0, {n}], got {x}")
        if not 0.0 <= C <= 1.0:
            raise ParameterDomainError(f"C must lie in [0, 1], got {C}")
        self.n, self.x, self.C = int(n), int(x), float(C)
        super().__init__(None, UNIT_INTERVAL, APPROXIMATE,
                         f"binomial: n={n}, x={x}, C={C:g}")

    def _upper(self, theta):
        tail = numerics.binomial_tail(self.n, self.x, theta)
        if self.C == 0.0:
            return tail
        return tail + self.C * numerics.binomial_pmf(self.x, self.n, theta)

    def survival(self, theta):
        # P(X < x) + (1 - C) P(X = x), i.e. the upper tail of n - X at n - x
        t = 1.0 - np.asarray(theta, dtype=float)
        below = numerics.binomial_tail(self.n, self.n - self.x, t)
        if self.C == 1.0:
            return below
        return below + (1.0 - self.C) * numerics.binomial_pmf(self.x, self.n, theta)

    def _density(self, theta):
        # d/dtheta P(X > x) = n * b_{n-1}(x); d/dtheta b_n(x) = n (b_{n-1}(x-1) - b_{n-1}(x))
        n, x, C = self.n, self.x, self.C
        return n * ((1.0 - C) * numerics.binomial_pmf(x, n - 1, theta)
                    + C * numerics.binomial_pmf(x - 1, n - 1, theta))

    def _beta_shape(self):
        # P(X > x) = I_theta(x + 1, n - x) and P(X >= x) = I_theta(x, n - x + 1)
        if self.C == 0.0 and self.x < self.n:
            return self.x + 1, self.n - self.x
        if self.C == 1.0 and self.x > 0:
            return self.x, self.n - self.x + 1
        return None

    def ppf(self, u):
        """Beta quantile for ``C`` in {0, 1}; ``None`` otherwise."""
        shape = self._beta_shape()
        if shape is None:
            return None
        return _special.betaincinv(shape[0], shape[1], np.asarray(u, dtype=float))

    def exact_mean(self) -> float:
        """Mean of the confidence measure, endpoint atoms included.

        The p-value is linear in ``C`` between two Beta CDFs, so the mean is
        ``(x + 1 - C) / (n + 1)``.
        """
        return (self.x + 1 - self.C) / (self.n + 1)

    def _start(self):
        return self.x / self.n

    @classmethod
    def simulate(cls, theta, nuisance, stream: SeededStream, *, n: int = 10, C: float = 0.5):
        return cls(n, int(stream.rng.binomial(n, theta)), C)


class NormNormalFamily(PValueFunction):
    """Confidence for the norm of a multivariate normal mean (identity covariance).

    ``p(theta) = 1 - chi2_dim((norm_obs / theta)**2)`` for ``theta > 0``.
    """

    def __init__(self, dim: int, norm_obs: float):
        if dim != int(dim) or dim < 1:
            raise ParameterDomainError(f"dim must be a positive integer, got {dim}")
        if not norm_obs >= 0:
            raise ParameterDomainError("norm_obs must be non-negative")
        self.dim, self.norm_obs = int(dim), float(norm_obs)
        super().__init__(None, Interval(0.0, math.inf), APPROXIMATE,
                         f"norm of normal mean: dim={dim}, |x|={norm_obs:g}")

    def _upper(self, theta):
        t = np.asarray(theta, dtype=float)
        with np.errstate(divide="ignore", invalid="ignore"):
            q = np.where(t > 0, (self.norm_obs / np.where(t > 0, t, 1.0)) ** 2, np.inf)
            out = _special.chdtrc(self.dim, q)
        if self.norm_obs == 0:
            out = np.ones_like(out)
        return out

    def survival(self, theta):
        t = np.asarray(theta, dtype=float)
        if self.norm_obs == 0:
            return np.zeros_like(t)[()]
        with np.errstate(divide="ignore", invalid="ignore"):
            q = np.where(t > 0, (self.norm_obs / np.where(t > 0, t, 1.0)) ** 2, np.inf)
            return _special.chdtr(self.dim, q)[()]

    def _density(self, theta):
        t = np.asarray(theta, dtype=float)
        r = self.norm_obs
        with np.errstate(divide="ignore", invalid="ignore"):
            safe = np.where(t > 0, t, 1.0)
            q = (r / safe) ** 2
            out = numerics.chi_squared_pdf(q, self.dim) * 2 * r * r / safe ** 3
        return np.where(t > 0, out, 0.0)

    def _start(self):
        return max(self.norm_obs, 1.0)

    @classmethod
    def simulate(cls, theta, nuisance, stream: SeededStream, *, dim: int = 2):
        mean = np.zeros(dim)
        mean[0] = theta
        return cls(dim, float(np.linalg.norm(stream.normal(mean, 1.0))))


# --------------------------------------------------------------------------
# exactness audit


def ks_uniform(u) -> float:
    """Kolmogorov-Smirnov distance between a sample and Uniform(0, 1)."""
    u = np.asarray(u, dtype=float)
    if u.size == 0:
        raise ArgumentError("empty sample")
    return float(_stats.kstest(u, "uniform").statistic)


@dataclass(frozen=True)
class AuditReport:
    ks_distance: float
    n_sims: int
    pvalues: np.ndarray


def _level_at(obj, theta):
    if hasattr(obj, "upper"):
        return obj.upper(theta)
    if hasattr(obj, "cdf"):
        return obj.cdf(theta)
    raise CapabilityError(f"{obj!r} exposes neither upper() nor cdf()")


def exactness_audit(family, true_theta, nuisance, n_sims: int, stream: SeededStream,
                    **design) -> AuditReport:
    """Check ``P(p_X^+(theta) < a) = a`` by simulation at the true parameter.

    ``family`` is a class with a ``simulate(theta, nuisance, stream, **design)``
    classmethod, or any callable with that signature returning an object
    with ``upper`` (p-value function) or ``cdf`` (confidence measure).
    Replicate ``i`` draws from ``stream.spawn(i)``, so the result does not
    depend on evaluation order.
    """
    if int(n_sims) != n_sims or n_sims < 1:
        raise ArgumentError("n_sims must be a positive integer")
    sim = getattr(family, "simulate", None)
    if sim is None:
        if isinstance(family, type) or not callable(family):
            raise CapabilityError(f"{family!r} cannot simulate data")
        sim = family
    pv = np.empty(int(n_sims))
    for i in range(int(n_sims)):
        pv[i] = _level_at(sim(true_theta, nuisance, stream.spawn(i), **design), true_theta)
    return AuditReport(ks_uniform(pv), int(n_sims), pv)
