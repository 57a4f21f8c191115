"""Predicting the next observation from a confidence measure.

Drawing theta from the confidence measure and then data from the model
gives a predictive distribution. For a normal mean with known scale the
predictive variance is sigma^2 plus the posterior variance.
"""

import numpy as np

from confmeta import (
    BinomialFamily,
    NormalMeanFamily,
    PredictiveDistribution,
    SeededStream,
    bernoulli_model,
    classify,
    normal_model,
    predictive_mean,
    predictive_sample,
)

data = SeededStream(5).normal(size=30) * 1.5 + 2.0
fam = NormalMeanFamily.from_data(data)
pd = PredictiveDistribution(fam.confidence_measure(), normal_model(float(np.std(data, ddof=1))))

est = predictive_mean(pd, SeededStream(1))
draws = predictive_sample(pd, 50_000, SeededStream(2))
print(f"sample mean {data.mean():.4f}")
print(f"predictive mean {est.value:.4f} +/- {est.std_error:.4f}")
print(f"predictive sd   {draws.std():.4f}  (data sd {data.std(ddof=1):.4f})")

# Binary outcome: classify by the predictive probability of a success.
for x in (3, 5, 8):
    m = BinomialFamily(10, x, 0.5).confidence_measure()
    print(f"{x}/10 successes -> predict {classify(PredictiveDistribution(m, bernoulli_model()))}")
