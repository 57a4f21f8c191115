"""Acceptance criteria, one test per criterion.

Each criterion prints a single ``PASS``/``FAIL`` line (also collected into
the pytest terminal summary). Run directly with ``python3
tests/test_acceptance.py`` to get just those lines.
"""

import math
import sys
import time
from fractions import Fraction
from pathlib import Path

import numpy as np
import pytest

sys.path.insert(0, str(Path(__file__).parent))

from confmeta.combine import combine  # noqa: E402
from confmeta.decision import Action, dominates, expected_loss  # noqa: E402
from confmeta.experiments import (  # noqa: E402
    fig1_row,
    run_consistency,
    run_coverage_audit,
    run_fig1,
    run_regions_sphere,
)
from confmeta.metameasure import ConfidenceMetameasure, duality_check  # noqa: E402
from confmeta.numerics import SeededStream  # noqa: E402
from confmeta.predictive import PredictiveDistribution, normal_model, predictive_mean  # noqa: E402
from confmeta.pvalue import NormalMeanFamily, exactness_audit  # noqa: E402
from confmeta.regions import Interval, Region  # noqa: E402

from helpers import random_disjoint_pair, random_region  # noqa: E402

RESULTS: list[str] = []


def _report(number, title, ok, detail, elapsed, limit=None):
    timing = f"{elapsed:.2f}s" + (f" (limit {limit:g}s)" if limit else "")
    line = f"criterion {number:>2} {'PASS' if ok else 'FAIL'}  {title}: {detail}  [{timing}]"
    RESULTS.append(line)
    print(line)
    return ok


def _timed(fn):
    t0 = time.perf_counter()
    out = fn()
    return out, time.perf_counter() - t0


# --------------------------------------------------------------------------


def criterion_1():
    thetas = [k / 20 for k in range(1, 20)]
    rhos = [0.5, 0.8, 0.9, 0.95]

    def work():
        worst_valid = worst_noncons = math.inf
        for n in range(1, 41):
            for r in run_coverage_audit(n, thetas, rhos):
                worst_valid = min(worst_valid, r["valid_coverage"] - r["rho"])
                worst_noncons = min(worst_noncons, r["rho"] - r["nonconservative_coverage"])
        return worst_valid, worst_noncons

    (wv, wn), dt = _timed(work)
    ok = wv >= -1e-12 and wn >= -1e-12 and dt < 30
    return _report(1, "exact coverage bounds", ok,
                   f"min(valid - rho)={wv:.3g}, min(rho - noncons)={wn:.3g}", dt, 30)


def criterion_2():
    def work():
        rows = run_fig1(100)
        first = tuple(rows[0][c] for c in ("valid_level", "nonconservative_level",
                                           "half_corrected_level", "convex_mean_level"))
        gap = max(abs(r["convex_mean_level"] - r["half_corrected_level"]) for r in rows)
        indet = {r["n"]: abs(r["nonconservative_level"] - r["valid_level"]) for r in rows}
        far = fig1_row(400, Fraction(2, 3))["half_corrected_level"]
        return first, gap, indet, far

    (first, gap, indet, far), dt = _timed(work)
    checks = {
        "a": first == (0.0, 0.5, 0.25, 0.25),
        "b": gap <= 1e-10,
        "c": indet[100] < indet[10] < indet[1],
        "d": far >= 0.99,
    }
    ok = all(checks.values()) and dt < 5
    detail = (f"n=1 row={first}, max|mean-half|={gap:.2g}, indeterminacy n=1/10/100="
              f"{indet[1]:.3g}/{indet[10]:.3g}/{indet[100]:.3g}, half-corrected n=400={far:.6f}")
    return _report(2, "binomial level curves", ok, detail, dt, 5)


def criterion_3():
    rep, dt = _timed(lambda: exactness_audit(NormalMeanFamily, 1.0, 2.0, 10_000,
                                             SeededStream(42), n=5))
    ok = rep.ks_distance < 0.02 and dt < 10
    return _report(3, "p-value uniformity", ok, f"KS={rep.ks_distance:.4f} (< 0.02)", dt, 10)


def criterion_4():
    def work():
        inside, _ = run_consistency([10, 100, 1000], 0.5, Region.open(0, 1), reps=2000, seed=42)
        outside, _ = run_consistency([10, 100, 1000], 2.0, Region.open(0, 1), reps=2000, seed=43)
        return [r["mean_conf"] for r in inside], [r["mean_conf"] for r in outside]

    (ins, outs), dt = _timed(work)
    ok = (ins[-1] >= 0.95 and outs[-1] <= 0.05 and ins[0] < ins[1] < ins[2]
          and outs[0] > outs[1] > outs[2] and dt < 60)
    detail = ("interior mean levels " + "/".join(f"{v:.4f}" for v in ins)
              + ", exterior " + "/".join(f"{v:.3g}" for v in outs))
    return _report(4, "consistency of confidence levels", ok, detail, dt, 60)


def criterion_5():
    def work():
        rows, _ = run_consistency([1000], 0.5, Region.point(0.5), reps=2000, seed=42)
        others = []
        for t in (0.25, 0.4999, 0.75):
            r, _ = run_consistency([1000], 0.5, Region.point(t), reps=200, seed=7, point=0.5)
            others.append(max(r[0]["mean_conf"], r[0]["q95"]))
        return rows[0], others

    (row, others), dt = _timed(work)
    point_levels = [row["mean_conf"], row["q05"], row["q95"], *others]
    ok = row["ks_pvalue_uniformity"] < 0.04 and all(v == 0.0 for v in point_levels)
    return _report(5, "p-value inconsistency contrast", ok,
                   f"KS={row['ks_pvalue_uniformity']:.4f} (< 0.04), "
                   f"max point-region level={max(point_levels)}", dt)


def criterion_6():
    def work():
        rng = np.random.default_rng(2024)
        mm = ConfidenceMetameasure.binomial(10, 7)
        regions = [random_region(rng, 0.0, 1.0) for _ in range(200)]
        pairs = [random_disjoint_pair(rng, 0.0, 1.0) for _ in range(200)]
        return duality_check(mm, regions, pairs)

    rep, dt = _timed(work)
    ok = rep.ok(1e-10) and rep.n_regions == 200 and rep.n_pairs == 200
    return _report(6, "coherence and duality", ok,
                   f"duality={rep.duality_violation:.2g}, superadd={rep.superadditivity_violation:.2g}, "
                   f"subadd={rep.subadditivity_violation:.2g}", dt)


def criterion_7():
    def work():
        mid = run_regions_sphere(2, 2.0, 1.0, 4.0)["p_between"]
        rng = np.random.default_rng(77)
        worst = 0.0
        for _ in range(100):
            dim = int(rng.integers(1, 12))
            norm = float(rng.uniform(0, 6))
            lo, hi = np.sort(rng.uniform(0.05, 10, 2))
            worst = max(worst, abs(run_regions_sphere(dim, norm, float(lo), float(hi))["total"] - 1))
        return mid, worst

    (mid, worst), dt = _timed(work)
    target = math.exp(-1 / 8) - math.exp(-2)
    ok = abs(mid - target) <= 1e-9 and worst <= 1e-9
    return _report(7, "sphere-region identity", ok,
                   f"middle={mid:.12f} vs {target:.12f}, max|sum-1|={worst:.2g}", dt)


def _random_step_loss(rng, lo, hi):
    from confmeta.decision import StepLoss

    k = int(rng.integers(1, 9))
    cuts = np.concatenate([[lo], np.sort(rng.uniform(lo, hi, k - 1)), [hi]])
    values = rng.normal(size=k)
    pieces = [Interval(float(cuts[i]), float(cuts[i + 1]), False, i < k - 1) for i in range(k)]
    return StepLoss([(Region([p]), float(v)) for p, v in zip(pieces, values)]), pieces, values


def criterion_8():
    def work():
        rng = np.random.default_rng(88)
        m = ConfidenceMetameasure.binomial(10, 7).reduce_convex_mean()
        worst = 0.0
        for _ in range(100):
            loss, pieces, values = _random_step_loss(rng, 0.0, 1.0)
            oracle = math.fsum(v * m.prob(Region([p])) for p, v in zip(pieces, values))
            worst = max(worst, abs(expected_loss(m, loss) - oracle))
        normal = NormalMeanFamily(6, 0.2, 1.3).confidence_measure()
        degenerate = ConfidenceMetameasure.degenerate(normal)
        mismatches = 0
        for _ in range(100):
            la, _, _ = _random_step_loss(rng, -4.0, 4.0)
            lb, _, _ = _random_step_loss(rng, -4.0, 4.0)
            strict = expected_loss(normal, la) < expected_loss(normal, lb)
            mismatches += dominates(Action(0, la), Action(1, lb), degenerate) != strict
        return worst, mismatches

    (worst, mismatches), dt = _timed(work)
    ok = worst <= 1e-10 and mismatches == 0
    return _report(8, "decision oracle equivalence", ok,
                   f"max|E - oracle|={worst:.2g}, dominance mismatches={mismatches}/100", dt)


def _two_studies(theta, sigma, stream):
    a = NormalMeanFamily.simulate(theta, sigma, stream.spawn(0), n=5).confidence_measure()
    b = NormalMeanFamily.simulate(theta, sigma, stream.spawn(1), n=5).confidence_measure()
    return combine([a, b])


def criterion_9():
    rep, dt = _timed(lambda: exactness_audit(_two_studies, 1.0, 2.0, 10_000, SeededStream(42)))
    ok = rep.ks_distance < 0.03
    return _report(9, "combination exactness", ok, f"KS={rep.ks_distance:.4f} (< 0.03)", dt)


def criterion_10():
    def work():
        post = NormalMeanFamily(4, 3.0, 1.0).confidence_measure()
        pd = PredictiveDistribution(post, normal_model(1.0), n_mix=100_000)
        target = post.mean()
        hits = 0
        for s in range(100):
            est = predictive_mean(pd, SeededStream(1000 + s))
            hits += abs(est.value - target) <= 3 * est.std_error
        return hits

    hits, dt = _timed(work)
    return _report(10, "predictive tower check", hits >= 95, f"{hits}/100 within 3 SE", dt)


CRITERIA = [criterion_1, criterion_2, criterion_3, criterion_4, criterion_5,
            criterion_6, criterion_7, criterion_8, criterion_9, criterion_10]


@pytest.mark.parametrize("criterion", CRITERIA, ids=lambda f: f.__name__)
def test_acceptance(criterion):
    assert criterion()


if __name__ == "__main__":
    passed = sum(bool(c()) for c in CRITERIA)
    print(f"{passed}/{len(CRITERIA)} acceptance criteria passed")
    sys.exit(0 if passed == len(CRITERIA) else 1)
