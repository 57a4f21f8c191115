import math

import mpmath
import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from confmeta.errors import AccuracyError, ArgumentError, ParameterDomainError, RangeError
from confmeta.numerics import (
    SeededStream,
    ToleranceConfig,
    binomial_pmf,
    binomial_tail,
    chi_squared_cdf,
    integrate,
    invert_monotone,
    special_cdf,
    std_normal_cdf,
    student_t_cdf,
)

from oracles import exact_upper_tail, mp_upper_tail, t3_cdf


# special_cdf ---------------------------------------------------------------


def test_special_cdf_examples():
    assert special_cdf("std_normal", 0.0) == 0.5
    assert special_cdf("chi_squared", 2.0, df=2) == pytest.approx(1 - math.exp(-1), abs=1e-14)
    assert special_cdf("binomial_tail", 1, n=2, theta=0.5) == pytest.approx(0.25, abs=1e-15)
    assert special_cdf("student_t", 1.0, df=3) == pytest.approx(0.804499, abs=1e-6)
    assert special_cdf("student_t", 1.0, df=3) == pytest.approx(t3_cdf(1.0), abs=1e-14)


@pytest.mark.parametrize("t", [-30.0, -3.0, -0.4, 0.0, 0.7, 2.0, 12.0])
def test_student_t_closed_forms(t):
    assert student_t_cdf(t, 3) == pytest.approx(t3_cdf(t), abs=1e-13)
    assert student_t_cdf(t, 1) == pytest.approx(0.5 + math.atan(t) / math.pi, abs=1e-13)
    assert student_t_cdf(t, 2) == pytest.approx(0.5 + t / (2 * math.sqrt(2 + t * t)), abs=1e-13)


@pytest.mark.parametrize("df", [5, 17, 60, 200])
@pytest.mark.parametrize("t", [-4.0, -1.1, 0.3, 2.5])
def test_student_t_against_mpmath(df, t):
    x = df / (df + t * t)
    tail = 0.5 * mpmath.betainc(df / 2, 0.5, 0, x, regularized=True)
    expected = float(tail if t < 0 else 1 - tail)
    assert student_t_cdf(t, df) == pytest.approx(expected, abs=1e-12)


@pytest.mark.parametrize("q", [0.0, 0.1, 1.0, 4.0, 30.0])
def test_chi_squared_closed_forms(q):
    assert chi_squared_cdf(q, 2) == pytest.approx(1 - math.exp(-q / 2), abs=1e-14)
    assert chi_squared_cdf(q, 4) == pytest.approx(1 - math.exp(-q / 2) * (1 + q / 2), abs=1e-14)


def test_chi_squared_negative_argument_is_zero():
    assert chi_squared_cdf(-1.0, 3) == 0.0


@settings(max_examples=200, deadline=None)
@given(n=st.integers(1, 60), data=st.data())
def test_binomial_tail_matches_rational_enumeration(n, data):
    x = data.draw(st.integers(-1, n + 1))
    theta = data.draw(st.fractions(0, 1, max_denominator=97))
    assert binomial_tail(n, x, float(theta)) == pytest.approx(
        exact_upper_tail(n, max(x, -1), float(theta)) if x >= 0 else 1.0, abs=1e-12)


@pytest.mark.parametrize("n,x,theta", [
    (1000, 300, 0.31), (20000, 6100, 0.3), (10**6, 500000, 0.5), (10**6, 499000, 0.5),
    (10**6, 2000, 0.0021), (10**6, 999990, 0.99999),
])
def test_binomial_tail_large_n_against_mpmath(n, x, theta):
    assert binomial_tail(n, x, theta) == pytest.approx(mp_upper_tail(n, x, theta), abs=1e-12)


def test_binomial_tail_vectorised_and_monotone():
    th = np.linspace(0, 1, 201)
    vals = binomial_tail(30, 11, th)
    assert vals.shape == th.shape
    assert np.all(np.diff(vals) >= 0)
    assert vals[0] == 0.0 and vals[-1] == 1.0
    assert [binomial_tail(30, 11, t) for t in th[:5]] == pytest.approx(vals[:5], abs=0)


def test_binomial_tail_nonincreasing_in_x():
    vals = [binomial_tail(25, x, 0.37) for x in range(-1, 26)]
    assert all(a >= b for a, b in zip(vals, vals[1:]))
    assert vals[0] == 1.0 and vals[-1] == 0.0


def test_binomial_pmf_sums_to_one():
    assert math.fsum(binomial_pmf(k, 50, 0.3) for k in range(51)) == pytest.approx(1.0, abs=1e-14)


@pytest.mark.parametrize("kwargs", [
    dict(kind="student_t", arg=1.0, df=0),
    dict(kind="student_t", arg=1.0, df=2.5),
    dict(kind="chi_squared", arg=1.0, df=-1),
    dict(kind="binomial_tail", arg=1, n=3, theta=1.2),
    dict(kind="binomial_tail", arg=1, n=-2, theta=0.5),
    dict(kind="binomial_tail", arg=1.5, n=3, theta=0.5),
    dict(kind="gamma", arg=1.0),
])
def test_special_cdf_parameter_errors(kwargs):
    kind, arg = kwargs.pop("kind"), kwargs.pop("arg")
    with pytest.raises(ParameterDomainError):
        special_cdf(kind, arg, **kwargs)


def test_continuous_cdfs_monotone_and_clamped():
    z = np.linspace(-50, 50, 2001)
    for vals in (std_normal_cdf(z), student_t_cdf(z, 4), chi_squared_cdf(z, 7)):
        assert np.all(np.diff(vals) >= 0)
        assert vals.min() >= 0 and vals.max() <= 1


# invert_monotone ------------------------------------------------------------


def test_invert_examples():
    assert invert_monotone(lambda t: t * t, 0.5, 0, 1) == pytest.approx(math.sqrt(0.5), abs=1e-9)
    assert invert_monotone(lambda t: t, 0.0, 0, 1) == 0.0
    assert invert_monotone(lambda t: 2 * t - t * t, 0.75, 0, 1) == pytest.approx(0.5, abs=1e-9)


def test_invert_range_error_carries_extremes():
    with pytest.raises(RangeError) as info:
        invert_monotone(lambda t: 0.5 * t, 0.9, 0, 1)
    assert (info.value.lower, info.value.upper) == (0.0, 0.5)


def test_invert_flat_stretch_returns_leftmost():
    f = lambda t: t if t < 0.3 else max(0.3, t - 0.4)  # noqa: E731  flat on [0.3, 0.7]
    assert invert_monotone(f, 0.3, 0, 1) == pytest.approx(0.3, abs=1e-9)


def test_invert_decreasing_and_unbounded():
    assert invert_monotone(lambda t: math.exp(-t), 0.25, 0, math.inf, increasing=False) == \
        pytest.approx(math.log(4), abs=1e-9)
    assert invert_monotone(math.atan, 1.0, -math.inf, math.inf) == pytest.approx(math.tan(1.0), abs=1e-9)


def test_invert_round_trip_random_monotone_functions():
    rng = np.random.default_rng(7)
    for _ in range(100):
        coef = rng.exponential(size=4)
        powers = rng.uniform(0.5, 4, size=4)
        shift = rng.normal()

        def f(t, coef=coef, powers=powers, shift=shift):
            return shift + float(np.sum(coef * t ** powers))

        theta = rng.uniform(0.05, 0.95)
        back = invert_monotone(f, f(theta), 0.0, 1.0)
        assert back == pytest.approx(theta, abs=1e-9)


def test_tolerance_config_validation():
    with pytest.raises(ArgumentError):
        ToleranceConfig(abs_tol=0)
    with pytest.raises(ArgumentError):
        ToleranceConfig(max_iter=0)


# integrate ----------------------------------------------------------------


def test_integrate_examples():
    assert integrate(lambda t: t, 0, 1) == pytest.approx(0.5, abs=1e-12)
    assert integrate(lambda t: math.exp(-t), 0, math.inf) == pytest.approx(1.0, abs=1e-12)
    phi = lambda t: math.exp(-t * t / 2) / math.sqrt(2 * math.pi)  # noqa: E731
    assert integrate(lambda t: t * phi(t), -math.inf, math.inf) == pytest.approx(0.0, abs=1e-12)


@pytest.mark.parametrize("f", [math.sin, lambda t: t**3 - t, lambda t: math.exp(-t * t)])
def test_integrate_additive(f):
    whole = integrate(f, -1.3, 2.1)
    parts = integrate(f, -1.3, 0.4) + integrate(f, 0.4, 2.1)
    assert abs(whole - parts) <= 10 * 1e-12


def test_integrate_divergent_raises_with_estimate():
    with pytest.raises(AccuracyError) as info:
        integrate(lambda t: 1.0 / t, 1.0, math.inf)
    assert info.value.estimate is not None


# SeededStream -------------------------------------------------------------


def test_stream_determinism():
    a, b = SeededStream(123, 4), SeededStream(123, 4)
    assert np.array_equal(a.uniform(1000), b.uniform(1000))
    assert not np.array_equal(SeededStream(123, 5).uniform(10), SeededStream(123, 4).uniform(10))


def test_spawned_streams_independent_of_parent_state():
    root = SeededStream(9)
    first = root.spawn(3).uniform(5)
    root.uniform(100)
    assert np.array_equal(root.spawn(3).uniform(5), first)
    assert not np.array_equal(root.spawn(4).uniform(5), first)


def test_stream_rejects_bad_seed():
    with pytest.raises(ArgumentError):
        SeededStream(-1)
    with pytest.raises(ArgumentError):
        SeededStream(2**64)
