"""Choosing an action when confidence is only known up to an interval.

Each action's expected loss becomes an interval over the convex family
of the metameasure. An action is discarded only when another one is better
for every member of the family.
"""

from confmeta import (
    Action,
    ConfidenceMetameasure,
    LossFunction,
    Region,
    StepLoss,
    accept_hypothesis,
    expectation_interval,
    non_dominated_set,
)

mm = ConfidenceMetameasure.binomial(12, 7)
H = Region.interval(0.5, 1.0)

actions = [
    Action(0, StepLoss.indicator(H, inside=0.0, outside=1.0), "launch"),
    Action(1, StepLoss.indicator(H, inside=0.3, outside=0.3), "wait"),
    Action(2, StepLoss.indicator(H, inside=1.0, outside=0.0), "abandon"),
]
for a in actions:
    lo, hi = expectation_interval(mm, a.loss)
    print(f"{a.name:8s} expected loss in [{lo:.4f}, {hi:.4f}]")
print("kept:", [a.name for a in non_dominated_set(actions, mm)])

# Squared error has a closed form under each measure.
lo, hi = expectation_interval(mm, LossFunction.squared_error(0.75))
print(f"\nsquared error of estimating 0.75: [{lo:.5f}, {hi:.5f}]")

# A single measure gives a yes/no answer at given betting odds.
m = mm.reduce_convex_mean()
for ratio in (1.0, 2.0, 5.0):
    print(f"accept theta >= 1/2 at odds {ratio:4.1f}: {accept_hypothesis(m, H, ratio)}")
