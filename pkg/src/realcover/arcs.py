"""Closed arcs on the unit circle and the minimal circle-cover computation.

The circle is R/Z with counterclockwise orientation; an arc is either the
whole circle or a closed interval given by its start and end, traversed
counterclockwise from start to end.  All endpoints are exact rationals, so
coverage questions have exact answers.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Sequence, Union


@dataclass(frozen=True)
class FullCircle:
    """The whole target circle, the image of any circle with nonzero winding."""


@dataclass(frozen=True)
class Arc:
    """Proper closed arc from start to end counterclockwise, start != end."""

    start: Fraction
    end: Fraction

    def __post_init__(self):
        object.__setattr__(self, "start", Fraction(self.start) % 1)
        object.__setattr__(self, "end", Fraction(self.end) % 1)
        if self.start == self.end:
            raise ValueError("proper arc needs distinct endpoints")

    @property
    def length(self) -> Fraction:
        return (self.end - self.start) % 1

    def contains(self, point: Fraction) -> bool:
        return (Fraction(point) - self.start) % 1 <= self.length


ArcLike = Union[Arc, FullCircle]

FULL_CIRCLE = FullCircle()


def arcs_intersect(a: ArcLike, b: ArcLike) -> bool:
    if isinstance(a, FullCircle) or isinstance(b, FullCircle):
        return True
    return (
        a.contains(b.start)
        or a.contains(b.end)
        or b.contains(a.start)
        or b.contains(a.end)
    )


def covers_circle(arcs: Sequence[ArcLike]) -> bool:
    """Exact coverage test: closed arcs cover the circle iff they cover every
    endpoint and the midpoint of every gap between consecutive endpoints."""
    if any(isinstance(a, FullCircle) for a in arcs):
        return True
    proper = [a for a in arcs if isinstance(a, Arc)]
    if not proper:
        return False
    points = sorted({a.start for a in proper} | {a.end for a in proper})
    probes = list(points)
    for i, p in enumerate(points):
        q = points[(i + 1) % len(points)]
        gap = (q - p) % 1
        if gap == 0:
            gap = Fraction(1)
        probes.append((p + gap / 2) % 1)
    return all(any(a.contains(x) for a in proper) for x in probes)


def min_circle_cover(arcs: Sequence[ArcLike]) -> Optional[int]:
    """Size of the smallest sub-multiset of arcs covering the circle.

    Returns None when even the full multiset leaves a point uncovered.
    Greedy sweep: anchor at each arc in turn, unroll every arc into the two
    candidate intervals it induces on the line, and repeatedly extend the
    covered prefix by the interval reaching farthest.  The minimum over
    anchors is exact by the usual exchange argument.
    """
    if any(isinstance(a, FullCircle) for a in arcs):
        return 1
    proper = [a for a in arcs if isinstance(a, Arc)]
    if not covers_circle(proper):
        return None
    best: Optional[int] = None
    one = Fraction(1)
    for anchor in proper:
        intervals: list[tuple[Fraction, Fraction]] = []
        for a in proper:
            if a is anchor:
                continue
            left = (a.start - anchor.start) % 1
            right = left + a.length
            intervals.append((left, right))
            intervals.append((left - 1, right - 1))
        reach = anchor.length
        count = 1
        while reach < one:
            extend = max(
                (right for left, right in intervals if left <= reach), default=reach
            )
            if extend <= reach:
                count = -1  # gap from this anchor; another anchor will do better
                break
            reach = extend
            count += 1
        if count > 0 and (best is None or count < best):
            best = count
    return best


def arc_to_json(a: ArcLike) -> dict:
    if isinstance(a, FullCircle):
        return {"full_circle": True}
    return {"start": f"{a.start.numerator}/{a.start.denominator}",
            "end": f"{a.end.numerator}/{a.end.denominator}"}
