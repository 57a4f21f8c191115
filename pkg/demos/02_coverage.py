"""Exact coverage of the binomial set estimators.

Coverage is summed over all outcomes x = 0..n, so there is no Monte Carlo
noise. The valid interval covers at least rho at every theta; the
nonconservative one covers at most rho.
"""

import numpy as np

from confmeta.experiments import run_coverage_audit

n = 20
thetas = np.linspace(0.02, 0.98, 49)
rows = run_coverage_audit(n, thetas, [0.9])

valid = np.array([r["valid_coverage"] for r in rows])
noncons = np.array([r["nonconservative_coverage"] for r in rows])
print(f"n={n}, rho=0.9, {len(thetas)} values of theta")
print(f"  valid coverage        min {valid.min():.4f}  max {valid.max():.4f}")
print(f"  nonconservative       min {noncons.min():.4f}  max {noncons.max():.4f}")
assert valid.min() >= 0.9 and noncons.max() <= 0.9

# The sawtooth shape is easiest to see on a coarse printout.
for r in rows[::6]:
    bar = "#" * int(round(40 * (r["valid_coverage"] - 0.8) / 0.2))
    print(f"  theta={r['theta']:.2f}  {r['valid_coverage']:.4f} {bar}")
