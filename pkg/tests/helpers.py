"""Random inputs shared across test modules."""

import numpy as np

from confmeta.regions import Interval, Region


def random_region(rng, lo, hi, max_pieces=4):
    """A random finite union of disjoint intervals inside ``[lo, hi]``."""
    k = int(rng.integers(1, max_pieces + 1))
    cuts = np.sort(rng.uniform(lo, hi, size=2 * k))
    pieces = []
    for a, b in zip(cuts[::2], cuts[1::2]):
        lo_open, hi_open = rng.random(2) < 0.5
        pieces.append(Interval(float(a), float(b), bool(lo_open), bool(hi_open)))
    return Region(pieces)


def random_disjoint_pair(rng, lo, hi, max_pieces=3):
    """Two disjoint random regions: the pieces of one region split between two."""
    r = random_region(rng, lo, hi, 2 * max_pieces)
    mask = rng.random(len(r)) < 0.5
    a = Region([p for p, m in zip(r, mask) if m])
    b = Region([p for p, m in zip(r, mask) if not m])
    return a, b
