"""Confidence levels concentrate on the truth; two-sided p-values do not.

For a normal mean with theta = 0.5 and the hypothesis (0, 1), the
confidence level tends to 1 as n grows. The two-sided p-value of the same
hypothesis stays uniform, which is the price of being a test statistic.
"""

from confmeta import NormalMeanFamily, Region, SeededStream
from confmeta.experiments import run_consistency

H = Region.open(0, 1)
rows, warns = run_consistency([10, 100, 1000], 0.5, H, reps=500, seed=3)
for r in rows:
    print(f"n={r['n']:5d}  mean level {r['mean_conf']:.4f}  "
          f"[{r['q05']:.4f}, {r['q95']:.4f}]  KS p-value uniformity {r['ks_pvalue_uniformity']:.3f}")
for w in warns:
    print("warning:", w)

# A single data set, looked at both ways.
fam = NormalMeanFamily.simulate(0.5, 1.0, SeededStream(11), n=50)
m = fam.confidence_measure()
print(f"\none sample of 50: level {m.prob(H):.4f}, two-sided p {fam.two_sided_p(H):.4f}")
print(f"a point hypothesis always gets level {m.prob(Region.point(0.5))}")
