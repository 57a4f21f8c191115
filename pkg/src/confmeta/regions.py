"""Finite unions of intervals on the parameter line.

Hypotheses are represented as :class:`Region` objects. Every confidence
level in the library is a sum of CDF differences over region pieces, so
regions carry endpoint openness explicitly even though continuous
measures ignore it.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterable, Sequence

from .errors import ArgumentError, DomainError

__all__ = ["Interval", "Region"]


@dataclass(frozen=True)
class Interval:
    lo: float
    hi: float
    lo_open: bool = False
    hi_open: bool = False

    def __post_init__(self):
        if math.isnan(self.lo) or math.isnan(self.hi):
            raise ArgumentError("interval endpoints must not be NaN")
        if self.lo > self.hi:
            raise ArgumentError(f"interval endpoints out of order: {self.lo} > {self.hi}")
        # infinite endpoints are never attained
        if math.isinf(self.lo) and not self.lo_open:
            object.__setattr__(self, "lo_open", True)
        if math.isinf(self.hi) and not self.hi_open:
            object.__setattr__(self, "hi_open", True)

    @classmethod
    def closed(cls, lo, hi):
        return cls(float(lo), float(hi))

    @classmethod
    def open(cls, lo, hi):
        return cls(float(lo), float(hi), True, True)

    @property
    def is_empty(self) -> bool:
        return self.lo == self.hi and (self.lo_open or self.hi_open)

    @property
    def is_point(self) -> bool:
        return self.lo == self.hi and not self.is_empty

    @property
    def length(self) -> float:
        return self.hi - self.lo

    def __contains__(self, t) -> bool:
        above = t > self.lo or (t == self.lo and not self.lo_open)
        below = t < self.hi or (t == self.hi and not self.hi_open)
        return above and below

    def contains_interval(self, other: "Interval") -> bool:
        if other.is_empty:
            return True
        lo_ok = other.lo > self.lo or (other.lo == self.lo and (other.lo_open or not self.lo_open))
        hi_ok = other.hi < self.hi or (other.hi == self.hi and (other.hi_open or not self.hi_open))
        return lo_ok and hi_ok

    def __str__(self):
        return f"{'(' if self.lo_open else '['}{self.lo:g}, {self.hi:g}{')' if self.hi_open else ']'}"


def _disjoint_sorted(a: Interval, b: Interval) -> bool:
    # a precedes b with no overlap (a shared endpoint is allowed if one side is open)
    return a.hi < b.lo or (a.hi == b.lo and (a.hi_open or b.lo_open))


class Region:
    """A finite union of pairwise disjoint intervals, sorted by left endpoint.

    Empty pieces are dropped on construction. Overlapping pieces are an
    error; use :meth:`union` to merge arbitrary regions.
    """

    __slots__ = ("pieces",)

    def __init__(self, pieces: Iterable[Interval] = ()):
        ps = sorted((p for p in pieces if not p.is_empty), key=lambda p: (p.lo, p.lo_open))
        for a, b in zip(ps, ps[1:]):
            if not _disjoint_sorted(a, b):
                raise ArgumentError(f"region pieces overlap: {a} and {b}")
        self.pieces: tuple[Interval, ...] = tuple(ps)

    # construction helpers -------------------------------------------------

    @classmethod
    def interval(cls, lo, hi, lo_open=False, hi_open=False) -> "Region":
        return cls([Interval(float(lo), float(hi), lo_open, hi_open)])

    @classmethod
    def open(cls, lo, hi) -> "Region":
        return cls([Interval(float(lo), float(hi), True, True)])

    @classmethod
    def point(cls, t) -> "Region":
        return cls([Interval(float(t), float(t))])

    @classmethod
    def empty(cls) -> "Region":
        return cls()

    @classmethod
    def whole(cls, domain: Interval) -> "Region":
        return cls([domain])

    @classmethod
    def from_bounds(cls, bounds: Sequence[tuple[float, float]]) -> "Region":
        """Closed pieces from ``(lo, hi)`` pairs."""
        return cls([Interval(float(a), float(b)) for a, b in bounds])

    # queries --------------------------------------------------------------

    @property
    def is_empty(self) -> bool:
        return not self.pieces

    def __iter__(self):
        return iter(self.pieces)

    def __len__(self):
        return len(self.pieces)

    def __eq__(self, other):
        return isinstance(other, Region) and self.pieces == other.pieces

    def __hash__(self):
        return hash(self.pieces)

    def __repr__(self):
        if not self.pieces:
            return "Region(empty)"
        return "Region(" + " U ".join(str(p) for p in self.pieces) + ")"

    def __contains__(self, t) -> bool:
        return any(t in p for p in self.pieces)

    @property
    def inf(self) -> float:
        return self.pieces[0].lo if self.pieces else math.nan

    @property
    def sup(self) -> float:
        return self.pieces[-1].hi if self.pieces else math.nan

    def within(self, domain: Interval) -> bool:
        return all(domain.contains_interval(p) for p in self.pieces)

    def check_within(self, domain: Interval) -> None:
        if not self.within(domain):
            raise DomainError(f"{self!r} is not contained in the parameter space {domain}")

    def is_disjoint(self, other: "Region") -> bool:
        for a in self.pieces:
            for b in other.pieces:
                if not (_disjoint_sorted(a, b) or _disjoint_sorted(b, a)):
                    return False
        return True

    # set algebra ----------------------------------------------------------

    def union(self, other: "Region") -> "Region":
        ps = sorted(self.pieces + other.pieces, key=lambda p: (p.lo, p.lo_open))
        merged: list[Interval] = []
        for p in ps:
            if merged and not _disjoint_sorted(merged[-1], p):
                q = merged[-1]
                if p.hi > q.hi or (p.hi == q.hi and not p.hi_open):
                    hi, hi_open = p.hi, p.hi_open
                else:
                    hi, hi_open = q.hi, q.hi_open
                lo_open = q.lo_open and not (p.lo == q.lo and not p.lo_open)
                merged[-1] = Interval(q.lo, hi, lo_open, hi_open)
            else:
                merged.append(p)
        return Region(merged)

    __or__ = union

    def complement(self, domain: Interval) -> "Region":
        """Complement relative to ``domain``."""
        self.check_within(domain)
        out = []
        cur_lo, cur_open = domain.lo, domain.lo_open
        for p in self.pieces:
            out.append(Interval(cur_lo, p.lo, cur_open, not p.lo_open))
            cur_lo, cur_open = p.hi, not p.hi_open
        out.append(Interval(cur_lo, domain.hi, cur_open, domain.hi_open))
        # pieces like [a, a) are empty and dropped by the constructor
        return Region([q for q in out if q.lo < q.hi or not (q.lo_open or q.hi_open)])

    def intersection(self, other: "Region") -> "Region":
        out = []
        for a in self.pieces:
            for b in other.pieces:
                if a.lo > b.lo or (a.lo == b.lo and a.lo_open):
                    lo, lo_open = a.lo, a.lo_open
                else:
                    lo, lo_open = b.lo, b.lo_open
                if a.hi < b.hi or (a.hi == b.hi and a.hi_open):
                    hi, hi_open = a.hi, a.hi_open
                else:
                    hi, hi_open = b.hi, b.hi_open
                if lo < hi or (lo == hi and not (lo_open or hi_open)):
                    out.append(Interval(lo, hi, lo_open, hi_open))
        return Region(out)

    __and__ = intersection
