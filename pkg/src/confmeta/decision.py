"""Loss-based decisions under a confidence measure or metameasure.

Expected losses under a single measure drive the usual minimum-expected-
loss rule. Under a metameasure each action gets an expectation interval;
one action dominates another when its whole interval lies at or below the
other's, with at least one strict pair of members.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, Sequence

import numpy as np

from .errors import ArgumentError, MomentError
from .measure import ConfidenceMeasure
from .metameasure import ConfidenceMetameasure
from .numerics import SeededStream
from .regions import Region

__all__ = [
    "LossFunction",
    "StepLoss",
    "Action",
    "MCEstimate",
    "expected_loss",
    "expected_loss_mc",
    "expectation_interval",
    "dominates",
    "non_dominated_set",
    "argmin_expected_loss",
    "accept_hypothesis",
    "zero_one_actions",
]

MC_DRAWS = 100_000


class LossFunction:
    """Loss ``L(theta)`` of an action.

    ``smooth=True`` marks losses suitable for quadrature against the
    measure's density; other losses are averaged by seeded Monte Carlo.
    """

    def __init__(self, evaluate: Callable, smooth: bool = True, integrability_hint: str = ""):
        self._evaluate = evaluate
        self.smooth = smooth
        self.integrability_hint = integrability_hint

    def __call__(self, theta):
        return self._evaluate(theta)

    @classmethod
    def constant(cls, c: float) -> "StepLoss":
        return StepLoss([], default=float(c))

    @classmethod
    def squared_error(cls, estimate: float) -> "LossFunction":
        return cls(lambda t: (np.asarray(t) - estimate) ** 2, smooth=True,
                   integrability_hint="finite second moment")

    @classmethod
    def absolute_error(cls, estimate: float) -> "LossFunction":
        return cls(lambda t: np.abs(np.asarray(t) - estimate), smooth=False,
                   integrability_hint="finite first moment")


class StepLoss(LossFunction):
    """Piecewise-constant loss: ``value_k`` on region ``k``, ``default`` elsewhere.

    Its expectation is computed exactly from region probabilities.
    """

    def __init__(self, pieces: Sequence[tuple[Region, float]], default: float = 0.0):
        regions = [r for r, _ in pieces]
        for i, a in enumerate(regions):
            for b in regions[i + 1:]:
                if not a.is_disjoint(b):
                    raise ArgumentError("step loss regions must be disjoint")
        self.pieces = [(r, float(v)) for r, v in pieces]
        self.default = float(default)
        super().__init__(self._step, smooth=False, integrability_hint="bounded")

    def _step(self, theta):
        t = np.asarray(theta, dtype=float)
        out = np.full(t.shape, self.default)
        flat = out.reshape(-1)
        for i, ti in enumerate(t.reshape(-1)):
            for r, v in self.pieces:
                if ti in r:
                    flat[i] = v
                    break
        return float(out) if out.ndim == 0 else out

    @classmethod
    def indicator(cls, region: Region, inside: float = 1.0, outside: float = 0.0) -> "StepLoss":
        return cls([(region, inside)], default=outside)

    def level_sets(self, domain) -> list[tuple[float, Region]]:
        """Distinct loss values with the region where each is taken."""
        covered = Region()
        by_value: dict[float, Region] = {}
        for r, v in self.pieces:
            r = r & Region.whole(domain)
            by_value[v] = by_value.get(v, Region()).union(r)
            covered = covered.union(r)
        rest = covered.complement(domain)
        if not rest.is_empty:
            by_value[self.default] = by_value.get(self.default, Region()).union(rest)
        return sorted(by_value.items())


@dataclass(frozen=True)
class Action:
    id: int
    loss: LossFunction
    name: str = ""


@dataclass(frozen=True)
class MCEstimate:
    value: float
    std_error: float
    n_draws: int

    def __float__(self):
        return self.value


def _layer_cake(m: ConfidenceMeasure, loss: StepLoss) -> float:
    # E[L] = v_1 + sum_j (v_{j+1} - v_j) P(L >= v_{j+1}) over sorted distinct values
    levels = loss.level_sets(m.domain)
    if not levels:
        return loss.default
    values = [v for v, _ in levels]
    total = values[0]
    upper = Region()
    tails = []
    for v, r in reversed(levels):
        upper = upper.union(r)
        tails.append(upper)
    tails.reverse()  # tails[j] = {L >= values[j]}
    for j in range(1, len(values)):
        total += (values[j] - values[j - 1]) * m.prob(tails[j])
    return total


def expected_loss_mc(m: ConfidenceMeasure, loss: Callable, stream: SeededStream | None = None,
                     n_draws: int = MC_DRAWS) -> MCEstimate:
    """Seeded Monte Carlo average of ``loss`` under ``m``, with standard error."""
    stream = stream if stream is not None else SeededStream(0)
    draws = m.sample(n_draws, stream)
    vals = np.asarray(loss(draws), dtype=float)
    if not np.all(np.isfinite(vals)):
        raise MomentError("loss is not finite on sampled parameter values")
    return MCEstimate(float(vals.mean()), float(vals.std(ddof=1) / math.sqrt(n_draws)), n_draws)


def expected_loss(m: ConfidenceMeasure, loss: LossFunction,
                  stream: SeededStream | None = None) -> float:
    """``int L dP`` under a single confidence measure.

    Step losses are integrated exactly from region probabilities, smooth
    losses by quadrature, anything else by seeded Monte Carlo.
    """
    if isinstance(loss, StepLoss):
        return _layer_cake(m, loss)
    if not isinstance(loss, LossFunction):
        loss = LossFunction(loss)
    if loss.smooth:
        return float(m.expect(loss))
    return expected_loss_mc(m, loss, stream).value


def expectation_interval(mm: ConfidenceMetameasure, loss: LossFunction,
                         stream: SeededStream | None = None) -> tuple[float, float]:
    """Range of expected losses over the convex family of the metameasure.

    The expected loss is affine in the mixture weight, so the extremes are
    attained at the two generating measures.
    """
    a = expected_loss(mm.valid, loss, stream)
    if mm.nonconservative is mm.valid:
        return (a, a)
    b = expected_loss(mm.nonconservative, loss, stream)
    return (min(a, b), max(a, b))


def _interval(x, mm, stream):
    if isinstance(x, Action):
        return expectation_interval(mm, x.loss, stream)
    lo, hi = x
    return (float(lo), float(hi))


def dominates(a, b, mm: ConfidenceMetameasure | None = None,
              stream: SeededStream | None = None) -> bool:
    """Whether ``a`` is rationally preferred to ``b``.

    Every expected loss of ``a`` is at most every expected loss of ``b``,
    and some pair is strictly ordered. ``a`` and ``b`` are actions (with
    ``mm``) or ready-made ``(lo, hi)`` expectation intervals.
    """
    ia, ib = _interval(a, mm, stream), _interval(b, mm, stream)
    return ia[1] <= ib[0] and ia[0] < ib[1]


def non_dominated_set(actions: Sequence[Action], mm: ConfidenceMetameasure,
                      stream: SeededStream | None = None) -> list[Action]:
    """Actions not dominated by any other, in input order."""
    actions = list(actions)
    if not actions:
        raise ArgumentError("empty action set")
    ids = [a.id for a in actions]
    if len(set(ids)) != len(ids):
        raise ArgumentError("action ids must be unique")
    ivs = [expectation_interval(mm, a.loss, stream) for a in actions]
    keep = []
    for j, a in enumerate(actions):
        if not any(dominates(ivs[i], ivs[j]) for i in range(len(actions)) if i != j):
            keep.append(a)
    return keep


def argmin_expected_loss(m: ConfidenceMeasure, actions: Sequence[Action],
                         stream: SeededStream | None = None) -> Action:
    """Minimum expected loss action; ties go to the lowest id."""
    actions = list(actions)
    if not actions:
        raise ArgumentError("empty action set")
    scored = [(expected_loss(m, a.loss, stream), a.id, a) for a in actions]
    return min(scored, key=lambda s: (s[0], s[1]))[2]


def accept_hypothesis(m: ConfidenceMeasure, region: Region, cost_benefit_ratio: float) -> bool:
    """Accept ``theta in region`` iff its fair betting odds exceed the ratio.

    Odds equal to the ratio lead to rejection.
    """
    if not cost_benefit_ratio > 0:
        raise ArgumentError("cost/benefit ratio must be positive")
    p = m.prob(region)
    if p >= 1.0:
        return True
    if p <= 0.0:
        return False
    return p / (1.0 - p) > cost_benefit_ratio


def zero_one_actions(region: Region) -> tuple[Action, Action]:
    """``(accept, reject)`` actions for a hypothesis under 0-1 loss.

    Accepting costs 1 when the hypothesis is false; rejecting costs 1 when
    it is true.
    """
    accept = Action(0, StepLoss.indicator(region, inside=0.0, outside=1.0), "accept")
    reject = Action(1, StepLoss.indicator(region, inside=1.0, outside=0.0), "reject")
    return accept, reject
