"""Hyperspace helpers: Hausdorff distance and Vietoris-basis membership.

Works on a finite representable fragment of the closed subsets of the line:
finite unions of closed intervals, with single points as degenerate
components.  Distances are exact in rational arithmetic.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence

from .intervals import IntervalSet, Scalar, covers_closed_interval, is_finite

__all__ = ["CompactRep", "hausdorff_distance", "vietoris_member"]


@dataclass(frozen=True)
class CompactRep:
    """Nonempty finite union of closed bounded intervals, sorted and disjoint.

    Closed components merge when they touch, so the normal form is unique.
    """

    components: tuple[tuple[Scalar, Scalar], ...]

    def __post_init__(self) -> None:
        if not self.components:
            raise ValueError("compact sets here are nonempty")
        for lo, hi in self.components:
            if not (is_finite(lo) and is_finite(hi)) or lo > hi:
                raise ValueError(f"bad closed component [{lo}, {hi}]")
        merged: list[list[Scalar]] = []
        for lo, hi in sorted(self.components):
            if merged and lo <= merged[-1][1]:
                merged[-1][1] = max(merged[-1][1], hi)
            else:
                merged.append([lo, hi])
        object.__setattr__(self, "components", tuple((a, b) for a, b in merged))

    @classmethod
    def points(cls, xs: Iterable[Scalar]) -> "CompactRep":
        return cls(tuple((x, x) for x in xs))

    @classmethod
    def closure(cls, s: IntervalSet) -> "CompactRep":
        if s.is_empty or not s.bounded:
            raise ValueError("need a nonempty bounded set")
        return cls(tuple((c.lo, c.hi) for c in s))

    def distance_to(self, x: Scalar) -> Scalar:
        best: Scalar | None = None
        for lo, hi in self.components:
            d = lo - x if x < lo else (x - hi if x > hi else 0)
            if best is None or d < best:
                best = d
        assert best is not None
        return best


def _directed(a: CompactRep, b: CompactRep) -> Scalar:
    # sup over a of dist(., b) peaks at a's endpoints or at midpoints of
    # b's gaps falling inside a component of a.
    candidates: list[Scalar] = []
    for lo, hi in a.components:
        candidates.append(lo)
        candidates.append(hi)
    for (_, left_hi), (right_lo, _) in zip(b.components, b.components[1:]):
        mid = (left_hi + right_lo) / 2
        if any(lo <= mid <= hi for lo, hi in a.components):
            candidates.append(mid)
    return max(b.distance_to(c) for c in candidates)


def hausdorff_distance(a: CompactRep, b: CompactRep) -> Scalar:
    """Smallest radius whose closed thickening of either set swallows the other."""
    return max(_directed(a, b), _directed(b, a))


def vietoris_member(a: CompactRep, opens: Sequence[IntervalSet]) -> bool:
    """True iff ``a`` is covered by the union of the opens and meets each one."""
    if not opens:
        raise ValueError("need at least one open set")
    pool = [comp for o in opens for comp in o]
    for lo, hi in a.components:
        if not covers_closed_interval(pool, lo, hi):
            return False
    for o in opens:
        if not any(
            c.lo < hi and c.hi > lo for c in o for lo, hi in a.components
        ):
            return False
    return True
