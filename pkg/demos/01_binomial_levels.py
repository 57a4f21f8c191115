"""Confidence that a success rate lies in [1/4, 3/4] as the sample grows.

With binomial data the valid (C = 0) and nonconservative (C = 1) p-value
functions disagree, so a hypothesis gets an interval of confidence levels
rather than a single number. The gap shrinks like 1/sqrt(n).

Run:  python3 demos/01_binomial_levels.py [--plot out.png]
"""

import sys
from fractions import Fraction

from confmeta import ConfidenceMetameasure, Region
from confmeta.experiments import FIG1_COLUMNS, format_csv, run_fig1

# One metameasure by hand: 7 successes out of 10.
mm = ConfidenceMetameasure.binomial(10, 7)
H = Region.interval(0.25, 0.75)
level = mm.metalevel(H)
print(f"x=7, n=10: confidence in {H} lies in [{level.lo:.4f}, {level.hi:.4f}]")
print(f"  indeterminacy {level.width:.4f}")
print(f"  half-way member  {mm.reduce_convex_mean().prob(H):.4f}")
print()

# Sweep over n. The true rate is exactly 2/3, so x = ceil(2n/3).
rows = run_fig1(100, Fraction(2, 3))
for r in rows[:5] + rows[-3:]:
    print(f"n={r['n']:3d}  valid={r['valid_level']:.4f}  "
          f"noncons={r['nonconservative_level']:.4f}  half={r['half_corrected_level']:.4f}")

with open("fig1.csv", "w") as fh:
    fh.write(format_csv(rows, FIG1_COLUMNS))
print("\nwrote fig1.csv")

if "--plot" in sys.argv:
    try:
        import matplotlib
        matplotlib.use("Agg")
        import matplotlib.pyplot as plt
    except ImportError:
        sys.exit("matplotlib is not installed")
    n = [r["n"] for r in rows]
    plt.fill_between(n, [r["valid_level"] for r in rows],
                     [r["nonconservative_level"] for r in rows], alpha=0.3, label="metalevel")
    plt.plot(n, [r["half_corrected_level"] for r in rows], "k-", lw=1, label="half-corrected")
    plt.xlabel("n")
    plt.ylabel("confidence in [1/4, 3/4]")
    plt.legend()
    plt.savefig(sys.argv[sys.argv.index("--plot") + 1], dpi=120)
