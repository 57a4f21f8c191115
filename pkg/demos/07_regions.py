"""Confidence for hypotheses that are not intervals around the estimate.

A spherical shell for a bivariate normal mean, and a three-way split
around an equivalence margin.
"""

import math

from confmeta.experiments import run_bioequiv, run_regions_sphere
from confmeta import NormalMeanFamily

rep = run_regions_sphere(2, 2.0, 1.0, 4.0)
print(f"|mu| observed 2.0:  P(<1) {rep['p_below']:.4f}  P(1..4) {rep['p_between']:.4f}  "
      f"P(>4) {rep['p_above']:.4f}")
print(f"closed form for the shell: {math.exp(-1 / 8) - math.exp(-2):.4f}")

fam = NormalMeanFamily(20, 0.05, 0.2)
rep = run_bioequiv(0.0, math.log(1.25), fam)
print(f"\nlog-ratio mean 0.05 (sd 0.2, n=20), margin +/- log(1.25):")
print(f"  below {rep['p_below']:.4f}  equivalent {rep['p_equivalent']:.4f}  above {rep['p_above']:.4f}")
