"""Posterior predictive distributions built on a confidence measure.

The predictive law mixes the sampling model over the confidence measure:
draw ``theta`` from the measure, then an observation from the model at
``theta``. Nuisance parameters are fixed (plug-in) values supplied by the
caller; they are not integrated out.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable

import numpy as np

from .decision import MCEstimate
from .errors import ArgumentError, CapabilityError, MomentError
from .measure import ConfidenceMeasure
from .numerics import SeededStream

__all__ = [
    "SamplingModel",
    "PredictiveDistribution",
    "normal_model",
    "bernoulli_model",
    "constant_model",
    "predictive_sample",
    "predictive_mean",
    "predictive_probability",
    "classify",
]

REAL_LINE = "real-line"
BINARY = "binary"


@dataclass(frozen=True)
class SamplingModel:
    """``simulate(theta_array, nuisance, rng) -> observations`` (one per theta).

    ``success_probability`` maps theta to ``P(X = 1)`` for binary models;
    ``conditional_mean`` maps theta to ``E[X | theta]`` when known.
    """

    simulate: Callable
    nuisance: object = None
    observation_space: str = REAL_LINE
    success_probability: Callable | None = None
    conditional_mean: Callable | None = None

    def __post_init__(self):
        if self.observation_space not in (REAL_LINE, BINARY):
            raise ArgumentError(f"unknown observation space {self.observation_space!r}")


def normal_model(sigma: float) -> SamplingModel:
    """``X ~ N(theta, sigma**2)`` with known (plug-in) ``sigma``."""
    return SamplingModel(lambda th, s, rng: rng.normal(th, s), nuisance=float(sigma),
                         conditional_mean=lambda th: th)


def bernoulli_model() -> SamplingModel:
    """``P(X = 1) = theta``."""
    return SamplingModel(lambda th, _, rng: (rng.random(np.shape(th)) < th).astype(float),
                         observation_space=BINARY, success_probability=lambda th: th,
                         conditional_mean=lambda th: th)


def constant_model(c: float) -> SamplingModel:
    return SamplingModel(lambda th, _, rng: np.full(np.shape(th), float(c)),
                         conditional_mean=lambda th: np.full(np.shape(th), float(c)))


@dataclass
class PredictiveDistribution:
    posterior: ConfidenceMeasure
    model: SamplingModel
    n_mix: int = 100_000

    def __post_init__(self):
        if int(self.n_mix) != self.n_mix or self.n_mix < 1:
            raise ArgumentError("n_mix must be a positive integer")


def predictive_sample(pd: PredictiveDistribution, k: int, stream: SeededStream) -> np.ndarray:
    """``k`` compound draws: parameter from the posterior, then data."""
    if int(k) != k or k < 1:
        raise ArgumentError("k must be a positive integer")
    theta = pd.posterior.sample(int(k), stream.spawn(0))
    return np.asarray(pd.model.simulate(theta, pd.model.nuisance, stream.spawn(1).rng), dtype=float)


def predictive_mean(pd: PredictiveDistribution, stream: SeededStream | None = None) -> MCEstimate:
    """Monte Carlo predictive mean over ``pd.n_mix`` compound draws."""
    if pd.model.observation_space == BINARY:
        raise CapabilityError("binary observations: use classify() or predictive_probability()")
    if pd.posterior.moment_order < 1:
        raise MomentError("posterior has no mean, so the predictive mean does not exist")
    stream = stream if stream is not None else SeededStream(0)
    x = predictive_sample(pd, pd.n_mix, stream)
    if not np.all(np.isfinite(x)):
        raise MomentError("non-finite predictive draws")
    se = float(x.std(ddof=1) / math.sqrt(x.size)) if x.size > 1 else 0.0
    return MCEstimate(math.fsum(x) / x.size, se, int(x.size))


def predictive_probability(pd: PredictiveDistribution) -> float:
    """``P(X = 1)`` under the predictive law of a binary model."""
    if pd.model.observation_space != BINARY:
        raise CapabilityError("predictive_probability needs a binary observation space")
    sp = pd.model.success_probability
    if sp is None:
        raise CapabilityError("binary model lacks success_probability")
    if _is_identity(sp):
        # exact posterior mean avoids quadrature error at the 1/2 boundary
        return pd.posterior.mean()
    return float(pd.posterior.expect(sp))


def _is_identity(f) -> bool:
    probe = np.array([0.125, 0.5, 0.875])
    try:
        return bool(np.array_equal(np.asarray(f(probe), dtype=float), probe))
    except Exception:
        return False


def classify(pd: PredictiveDistribution) -> int:
    """Predicted class: 1 iff the predictive ``P(X = 1)`` is at least 1/2."""
    return int(predictive_probability(pd) >= 0.5)
