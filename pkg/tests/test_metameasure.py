import math
from fractions import Fraction

import numpy as np
import pytest

from confmeta.errors import ArgumentError
from confmeta.metameasure import (
    ConfidenceMetameasure,
    ProbabilityInterval,
    duality_check,
    indeterminacy,
    metalevel,
)
from confmeta.pvalue import BinomialFamily, NormalMeanFamily
from confmeta.regions import Region

from helpers import random_disjoint_pair, random_region

H = Region.interval(0.25, 0.75)
MM1 = ConfidenceMetameasure.binomial(1, 1)
NORMAL = NormalMeanFamily(4, 0.0, 1.0).confidence_measure()
DEGENERATE = ConfidenceMetameasure.degenerate(NORMAL)


def test_probability_interval_validation():
    with pytest.raises(ArgumentError):
        ProbabilityInterval(0.6, 0.4)
    with pytest.raises(ArgumentError):
        ProbabilityInterval(-0.1, 0.4)
    assert 0.5 in ProbabilityInterval(0.2, 0.5)


def test_metalevel_examples():
    assert tuple(metalevel(MM1, H)) == (0.0, pytest.approx(0.5, abs=1e-15))
    for r in (Region.interval(-1, 2), Region.point(0.3), Region.from_bounds([(-3, -1), (0, 5)])):
        ml = DEGENERATE.metalevel(r)
        assert ml.lo == ml.hi
    assert tuple(MM1.metalevel(Region.whole(MM1.domain))) == (1.0, 1.0)


def test_indeterminacy_examples():
    assert indeterminacy(MM1, H) == pytest.approx(0.5, abs=1e-15)
    assert DEGENERATE.indeterminacy(Region.interval(-0.2, 0.9)) == 0.0
    big = ConfidenceMetameasure.binomial(100, 67).indeterminacy(H)
    assert big < 0.1 and big < indeterminacy(MM1, H)


def test_common_domain_required():
    with pytest.raises(ArgumentError):
        ConfidenceMetameasure(NORMAL, MM1.valid)


def test_degeneracy_detection():
    assert DEGENERATE.is_degenerate()
    assert not MM1.is_degenerate()


def test_reduce_mixture_examples():
    assert MM1.reduce_mixture(0.0) is MM1.valid
    assert MM1.reduce_mixture(1.0) is MM1.nonconservative
    assert MM1.reduce_mixture(0.5).prob(H) == pytest.approx(0.25, abs=1e-15)
    for bad in (-0.1, 1.1):
        with pytest.raises(ArgumentError):
            MM1.reduce_mixture(bad)


def test_reduce_convex_mean_examples():
    half = BinomialFamily(1, 1, 0.5).confidence_measure()
    assert MM1.reduce_convex_mean().prob(H) == pytest.approx(half.prob(H), abs=1e-15)
    assert DEGENERATE.reduce_convex_mean() is NORMAL
    assert MM1.reduce_convex_mean().prob(Region.whole(MM1.domain)) == 1.0


def test_mixture_between_metalevel_bounds():
    rng = np.random.default_rng(4)
    mm = ConfidenceMetameasure.binomial(12, 5)
    for _ in range(100):
        r = random_region(rng, 0, 1)
        ml = mm.metalevel(r)
        D = rng.uniform()
        p = mm.reduce_mixture(D).prob(r)
        assert ml.lo - 1e-15 <= p <= ml.hi + 1e-15


def test_duality_examples():
    rep = duality_check(MM1, [H])
    comp = H.complement(MM1.domain)
    assert MM1.lower(H) == 0.0 and MM1.upper(comp) == 1.0
    assert rep.duality_violation == 0.0
    rng = np.random.default_rng(5)
    regions = [random_region(rng, -3, 3) for _ in range(30)]
    assert duality_check(DEGENERATE, regions).max_violation <= 1e-15


def test_duality_random_regions_binomial():
    rng = np.random.default_rng(6)
    mm = ConfidenceMetameasure.binomial(10, 7)
    regions = [random_region(rng, 0, 1) for _ in range(200)]
    pairs = [random_disjoint_pair(rng, 0, 1) for _ in range(200)]
    rep = duality_check(mm, regions, pairs)
    assert rep.n_regions == 200 and rep.n_pairs == 200
    assert rep.ok(1e-10)


def test_duality_with_regions_touching_domain_ends():
    mm = ConfidenceMetameasure.binomial(6, 6)
    regions = [Region.interval(0.0, 0.4), Region.interval(0.6, 1.0),
               Region.interval(0.2, 1.0, True, True), Region.point(1.0)]
    assert duality_check(mm, regions).ok(1e-12)


def test_fig1_ordering_and_convex_mean_identity():
    theta = Fraction(2, 3)
    for n in range(1, 101):
        x = math.ceil(n * theta)
        mm = ConfidenceMetameasure.binomial(n, x)
        ml = mm.metalevel(H)
        mean_level = mm.reduce_convex_mean().prob(H)
        assert ml.lo - 1e-15 <= mean_level <= ml.hi + 1e-15
        assert mean_level == pytest.approx(BinomialFamily(n, x, 0.5).confidence_measure().prob(H),
                                           abs=1e-10)


def test_dual_set_estimates_orientation():
    v, c = MM1.set_estimates(0.9, 0.05)
    assert c.contains_interval(v) or v.contains_interval(c)
    assert v.contains_interval(c)
