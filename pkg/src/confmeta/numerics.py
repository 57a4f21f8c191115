"""Special functions, monotone inversion, quadrature and seeded streams.

Everything downstream funnels through this module so that tolerances and
random streams are handled in one place.
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass, field

import numpy as np
from scipy import integrate as _integrate
from scipy import special as _special

from .errors import AccuracyError, ArgumentError, ParameterDomainError, RangeError

__all__ = [
    "ToleranceConfig",
    "DEFAULT_TOL",
    "SeededStream",
    "special_cdf",
    "std_normal_cdf",
    "std_normal_ppf",
    "student_t_cdf",
    "student_t_pdf",
    "chi_squared_cdf",
    "chi_squared_pdf",
    "binomial_pmf",
    "binomial_tail",
    "invert_monotone",
    "integrate",
]


@dataclass(frozen=True)
class ToleranceConfig:
    abs_tol: float = 1e-12
    rel_tol: float = 1e-10
    max_iter: int = 200

    def __post_init__(self):
        if not (self.abs_tol > 0 and self.rel_tol > 0):
            raise ArgumentError("tolerances must be positive")
        if int(self.max_iter) != self.max_iter or self.max_iter < 1:
            raise ArgumentError("max_iter must be a positive integer")


DEFAULT_TOL = ToleranceConfig()


@dataclass
class SeededStream:
    """A reproducible random stream identified by ``(seed, stream_index)``.

    Two instances built from the same pair produce bitwise-identical draws.
    A stream is stateful: hand one stream to one task, and use
    :meth:`spawn` to derive independent child streams for replicates.
    """

    seed: int = 42
    stream_index: int = 0
    _path: tuple = field(default=(), repr=False)
    rng: np.random.Generator = field(init=False, repr=False)

    def __post_init__(self):
        if not 0 <= int(self.seed) < 2**64:
            raise ArgumentError("seed must be a 64-bit unsigned integer")
        if int(self.stream_index) < 0:
            raise ArgumentError("stream_index must be non-negative")
        ss = np.random.SeedSequence(
            int(self.seed), spawn_key=(int(self.stream_index),) + tuple(self._path)
        )
        self.rng = np.random.Generator(np.random.PCG64(ss))

    def spawn(self, index: int) -> "SeededStream":
        """Child stream number ``index``; independent of the parent's state."""
        return SeededStream(self.seed, self.stream_index, self._path + (int(index),))

    def uniform(self, size=None):
        return self.rng.random(size)

    def normal(self, loc=0.0, scale=1.0, size=None):
        return self.rng.normal(loc, scale, size)


# --------------------------------------------------------------------------
# continuous CDFs


def std_normal_cdf(z):
    return _special.ndtr(z)


def std_normal_ppf(p):
    return _special.ndtri(p)


def _check_df(df):
    if df != int(df) or df < 1:
        raise ParameterDomainError(f"degrees of freedom must be an integer >= 1, got {df}")


def student_t_cdf(t, df):
    _check_df(df)
    return np.clip(_special.stdtr(df, t), 0.0, 1.0)


def student_t_pdf(t, df):
    _check_df(df)
    t = np.asarray(t, dtype=float)
    logc = math.lgamma((df + 1) / 2) - math.lgamma(df / 2) - 0.5 * math.log(df * math.pi)
    return np.exp(logc - (df + 1) / 2 * np.log1p(t * t / df))


def chi_squared_cdf(q, df):
    _check_df(df)
    q = np.asarray(q, dtype=float)
    return np.where(q > 0, _special.chdtr(df, np.maximum(q, 0.0)), 0.0)


def chi_squared_pdf(q, df):
    _check_df(df)
    q = np.asarray(q, dtype=float)
    k = df / 2
    with np.errstate(divide="ignore", invalid="ignore"):
        logp = (k - 1) * np.log(q) - q / 2 - k * math.log(2) - math.lgamma(k)
        out = np.where(q > 0, np.exp(logp), 0.0)
    if df == 2:
        out = np.where(q == 0, 0.5, out)
    return out


# --------------------------------------------------------------------------
# binomial: saddle-point pmf (Loader 2000) plus truncated tail summation

_LN_2PI = math.log(2 * math.pi)
_STIRLERR_SMALL = [0.0] + [
    math.lgamma(k + 1) - (k + 0.5) * math.log(k) + k - 0.5 * _LN_2PI for k in range(1, 16)
]


def _stirlerr(n: int) -> float:
    # log(n!) - log(sqrt(2 pi n) (n/e)^n)
    if n <= 15:
        return _STIRLERR_SMALL[n]
    nn = float(n) * n
    s0, s1, s2, s3, s4 = 1 / 12, 1 / 360, 1 / 1260, 1 / 1680, 1 / 1188
    if n > 500:
        return (s0 - s1 / nn) / n
    if n > 80:
        return (s0 - (s1 - s2 / nn) / nn) / n
    if n > 35:
        return (s0 - (s1 - (s2 - s3 / nn) / nn) / nn) / n
    return (s0 - (s1 - (s2 - (s3 - s4 / nn) / nn) / nn) / nn) / n


def _bd0(x: float, npr: np.ndarray) -> np.ndarray:
    # x log(x/np) + np - x, computed without cancellation near x == np
    npr = np.asarray(npr, dtype=float)
    out = np.empty_like(npr)
    near = np.abs(x - npr) < 0.1 * (x + npr)
    far = ~near
    with np.errstate(divide="ignore", invalid="ignore"):
        out[far] = x * np.log(x / npr[far]) + npr[far] - x
    if np.any(near):
        m = npr[near]
        v = (x - m) / (x + m)
        s = (x - m) * v
        ej = 2 * x * v
        v2 = v * v
        active = np.ones_like(s, dtype=bool)
        j = 1
        while np.any(active) and j < 1000:
            ej = ej * v2
            s1 = s + ej / (2 * j + 1)
            active = s1 != s
            s = s1
            j += 1
        out[near] = s
    return out


def binomial_pmf(k: int, n: int, theta):
    """P(X = k) for X ~ Binomial(n, theta), accurate in relative terms.

    ``theta`` may be an array; ``k`` and ``n`` are integers.
    """
    theta = np.asarray(theta, dtype=float)
    scalar = theta.ndim == 0
    th = np.atleast_1d(theta)
    q = 1.0 - th
    out = np.zeros_like(th)
    if k < 0 or k > n:
        return float(out[0]) if scalar else out
    with np.errstate(divide="ignore"):
        if k == 0:
            out = np.exp(n * np.log1p(-th)) if n > 0 else np.ones_like(th)
        elif k == n:
            out = np.exp(n * np.log(th))
        else:
            inner = (th > 0) & (th < 1)
            t = th[inner]
            lc = (
                _stirlerr(n)
                - _stirlerr(k)
                - _stirlerr(n - k)
                - _bd0(float(k), n * t)
                - _bd0(float(n - k), n * (1.0 - t))
            )
            lf = _LN_2PI + math.log(k) + math.log(n - k) - math.log(n)
            out[inner] = np.exp(lc - 0.5 * lf)
    out = np.where(q < 0, np.nan, out)
    return float(out[0]) if scalar else out


def _check_binomial(n, theta):
    if n != int(n) or n < 0:
        raise ParameterDomainError(f"n must be a non-negative integer, got {n}")
    t = np.asarray(theta, dtype=float)
    if np.any(~((t >= 0) & (t <= 1))):
        raise ParameterDomainError("theta must lie in [0, 1]")


def binomial_tail(n: int, x: int, theta):
    """Upper tail ``P(X > x)`` for ``X ~ Binomial(n, theta)``.

    Summed term by term from ``P(X = x)`` into whichever tail is smaller,
    stopping once terms no longer change the sum. No normal approximation.
    Vectorised over ``theta``.
    """
    _check_binomial(n, theta)
    n, x = int(n), int(x)
    theta = np.asarray(theta, dtype=float)
    scalar = theta.ndim == 0
    th = np.atleast_1d(theta).astype(float)
    if x < 0:
        out = np.ones_like(th)
        return float(out[0]) if scalar else out
    if x >= n:
        out = np.zeros_like(th)
        return float(out[0]) if scalar else out

    out = np.empty_like(th)
    out[th == 0] = 0.0
    out[th == 1] = 1.0
    inner = (th > 0) & (th < 1)
    upper = inner & (n * th <= x)  # terms above x decrease: sum them directly
    lower = inner & ~upper  # sum P(X <= x) downward and complement

    if np.any(upper):
        t = th[upper]
        r = t / (1.0 - t)
        term = binomial_pmf(x, n, t)
        total = np.zeros_like(t)
        for k in range(x, n):
            term = term * ((n - k) / (k + 1.0)) * r
            new = total + term
            if np.all((new == total) | (term == 0)):
                total = new
                break
            total = new
        out[upper] = total
    if np.any(lower):
        t = th[lower]
        rinv = (1.0 - t) / t
        term = binomial_pmf(x, n, t)
        total = term.copy()
        for k in range(x, 0, -1):
            term = term * (k / (n - k + 1.0)) * rinv
            new = total + term
            if np.all((new == total) | (term == 0)):
                total = new
                break
            total = new
        out[lower] = 1.0 - total
    out = np.clip(out, 0.0, 1.0)
    return float(out[0]) if scalar else out


def special_cdf(kind: str, arg, *, df=None, n=None, theta=None):
    """Dispatch to one of the supported distribution functions.

    ``kind`` is one of ``"std_normal"``, ``"student_t"``, ``"chi_squared"``,
    ``"binomial_tail"``. For ``"binomial_tail"`` the argument is the integer
    ``x`` and the return value is ``P(X > x)``.
    """
    if kind == "std_normal":
        return std_normal_cdf(arg)
    if kind == "student_t":
        return student_t_cdf(arg, df)
    if kind == "chi_squared":
        return chi_squared_cdf(arg, df)
    if kind == "binomial_tail":
        if arg != int(arg):
            raise ParameterDomainError("binomial_tail needs an integer argument")
        return binomial_tail(n, int(arg), theta)
    raise ParameterDomainError(f"unknown distribution kind {kind!r}")


# --------------------------------------------------------------------------
# inversion


def _expand_bracket(f, target, lo, hi, start, tol):
    a = max(lo, min(hi, start))
    step = 1.0
    if f(a) >= target:
        b = a
        for _ in range(tol.max_iter):
            a = max(lo, b - step)
            if a == lo or f(a) < target:
                return a, b
            b, step = a, step * 2
        raise AccuracyError("failed to bracket the inverse", estimate=b)
    for _ in range(tol.max_iter):
        b = min(hi, a + step)
        if b == hi or f(b) >= target:
            return a, b
        a, step = b, step * 2
    raise AccuracyError("failed to bracket the inverse", estimate=a)


def invert_monotone(f, target, lo, hi, tol: ToleranceConfig = DEFAULT_TOL, *,
                    increasing=True, start=0.0):
    """Generalised inverse of a monotone function.

    For nondecreasing ``f`` returns the smallest ``theta`` in ``[lo, hi]``
    with ``f(theta) >= target`` (left-continuous convention); for
    nonincreasing ``f`` the smallest ``theta`` with ``f(theta) <= target``.
    Infinite ``lo``/``hi`` are handled by expanding a bracket from ``start``.

    Uses a bracketing Illinois iteration that falls back to bisection
    whenever the bracket stops halving, so flat stretches are safe.

    Raises
    ------
    RangeError
        If ``target`` is not attained on the interval. The error carries
        the achievable extremes.
    """
    if not increasing:
        g = f
        f = lambda t: -g(t)  # noqa: E731
        target = -target
    if lo > hi:
        raise ArgumentError("empty inversion interval")
    f_lo = f(lo) if math.isfinite(lo) else None
    f_hi = f(hi) if math.isfinite(hi) else None
    if f_lo is not None and f_lo >= target:
        return float(lo)
    if f_hi is not None and f_hi < target:
        lo_v = f_lo if f_lo is not None else -math.inf
        ext = (lo_v, f_hi) if increasing else (-f_hi, -lo_v)
        raise RangeError(f"target {target if increasing else -target} not attained on "
                         f"[{lo}, {hi}]", lower=ext[0], upper=ext[1])
    if math.isfinite(lo) and math.isfinite(hi):
        a, b = float(lo), float(hi)
    else:
        a, b = _expand_bracket(f, target, lo, hi, start, tol)
        if not math.isfinite(a) or not math.isfinite(b):
            raise RangeError("target not attained on unbounded interval")
        if f(a) >= target:
            return a
    fa, fb = f(a) - target, f(b) - target
    last = 0
    for i in range(tol.max_iter):
        if b - a <= tol.rel_tol * max(1.0, abs(b)):
            return b
        m = 0.5 * (a + b)
        # every other step is a regula falsi step; bisection in between
        # guarantees the bracket at least halves every two iterations
        if i % 2 == 0 and fb != fa:
            s = b - fb * (b - a) / (fb - fa)
            if a < s < b:
                m = s
        fm = f(m) - target
        if fm >= 0:
            b, fb = m, fm
            if last == 1:
                fa *= 0.5
            last = 1
        else:
            a, fa = m, fm
            if last == -1:
                fb *= 0.5
            last = -1
    # no convergence within max_iter: plain bisection finishes the job
    for _ in range(2000):
        if b - a <= tol.rel_tol * max(1.0, abs(b)):
            return b
        m = 0.5 * (a + b)
        if f(m) >= target:
            b = m
        else:
            a = m
    return b


def invert_monotone_array(f, targets, lo, hi, *, n_iter=None, rel_tol=1e-12):
    """Vectorised bisection of a nondecreasing ``f`` on finite ``[lo, hi]``.

    Returns, for each target, the smallest point with ``f >= target`` up to
    the bisection resolution. Targets above ``f(hi)`` map to ``hi``.
    """
    targets = np.asarray(targets, dtype=float)
    a = np.full(targets.shape, float(lo))
    b = np.full(targets.shape, float(hi))
    at_lo = np.asarray(f(a)) >= targets
    if n_iter is None:
        n_iter = int(math.ceil(math.log2(max(hi - lo, 1e-300) / (rel_tol * max(1.0, abs(lo), abs(hi)))))) + 1
    for _ in range(n_iter):
        m = 0.5 * (a + b)
        ok = np.asarray(f(m)) >= targets
        b = np.where(ok, m, b)
        a = np.where(ok, a, m)
    return np.where(at_lo, float(lo), b)


# --------------------------------------------------------------------------
# quadrature


def integrate(f, a, b, tol: ToleranceConfig = DEFAULT_TOL, *, points=None):
    """Adaptive Gauss-Kronrod quadrature of ``f`` over ``[a, b]``.

    Infinite endpoints are mapped onto finite ones internally. Raises
    :class:`AccuracyError` (with the best estimate attached) when the
    requested accuracy is not reached.
    """
    if a > b:
        raise ArgumentError("integration limits out of order")
    if a == b:
        return 0.0
    limit = max(50, tol.max_iter)
    kw = {}
    if points is not None and math.isfinite(a) and math.isfinite(b):
        kw["points"] = [p for p in points if a < p < b]
    with warnings.catch_warnings():
        warnings.simplefilter("error", _integrate.IntegrationWarning)
        try:
            val, err = _integrate.quad(f, a, b, epsabs=tol.abs_tol, epsrel=tol.rel_tol,
                                       limit=limit, **kw)
        except _integrate.IntegrationWarning as w:
            with warnings.catch_warnings():
                warnings.simplefilter("ignore")
                val, err = _integrate.quad(f, a, b, epsabs=tol.abs_tol, epsrel=tol.rel_tol,
                                           limit=limit, **kw)
            # quad is pessimistic; accept an estimate within a looser envelope
            if math.isfinite(val) and err <= max(100 * tol.abs_tol, 100 * tol.rel_tol * abs(val)):
                return val
            raise AccuracyError(f"quadrature did not converge: {w}", estimate=val, error=err) from None
    return val
