"""Degree-4 coverings with all windings zero and a prescribed covering number.

The covering number of a covering is the least number of real circles whose
images jointly cover the target circle (0 when even all of them fail to).
Winding-0 circles map onto arcs, so the whole question lives at the level
of arc layouts; the builders below produce explicit rational layouts:

  * maximal case (s = g + 1, covering number s): a cyclic chain of g + 2
    fold arcs with consecutive overlaps, two of them merged through one
    smoothed node.  For odd genus the chain has g + 1 arcs and the extra
    arc sits nested inside the first one.
  * covering number below s on a maximal curve: take the previous build at
    the smaller genus and split its first circle repeatedly at doubly
    covered values; every split piece is redundant for covering.
  * fewer circles than g + 1 (separating case): a chain of kcov + b arcs,
    the first b + 1 merged into one circle, plus s - kcov arcs nested in
    the first arc's exclusive region, where 2b = g + 1 - s.
  * non-separating case: the separating build one or two genera lower,
    followed by node smoothings away from the real locus which change
    nothing at arc level.

Every component of a built cover is a winding-0 circle, the total degree is
4, and no value is covered by more than two arcs, so the fiber budget holds
with room for the two non-real sheets wherever only one arc passes.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import List, Tuple

from .arcs import min_circle_cover
from .plsim import PLCover, fold_split, image_arcs, merge_components, pl_map
from .topology import CoverSpec, CoverTarget, DegreeVector, TopType, weichold_admissible


class InfeasibleTarget(ValueError):
    """The requested type or covering number violates the known bounds."""


@dataclass(frozen=True)
class CoveringNumberTarget:
    """A topological type with at least one real circle and 1 <= kcov <= s."""

    top: TopType
    kcov: int

    def __post_init__(self):
        if not weichold_admissible(self.top.g, self.top.s, self.top.a):
            raise InfeasibleTarget(f"type {self.top} fails the existence bounds")
        if self.top.s < 1:
            raise InfeasibleTarget("covering numbers need at least one real circle")
        if not 1 <= self.kcov <= self.top.s:
            raise InfeasibleTarget(f"covering number must lie in 1..{self.top.s}")


def covering_number(cover: PLCover) -> int:
    """Minimal number of circles whose images cover the target circle; 0 if none do."""
    if not cover.components:
        return 0
    result = min_circle_cover([arc for _, arc in image_arcs(cover)])
    return 0 if result is None else result


def _chain_arcs(m: int) -> List[Tuple[Fraction, Fraction]]:
    """m arcs around the circle, consecutive ones overlapping, others disjoint.

    Arc j runs from j/m - o to (j+1)/m + o with o = 1/(4m); for m = 2 the
    two arcs overlap at both ends.
    """
    o = Fraction(1, 4 * m)
    return [(Fraction(j, m) - o, Fraction(j + 1, m) + o) for j in range(m)]


def _tent(lo: Fraction, hi: Fraction):
    return pl_map([lo, hi], 0)


def _chain_cover(m: int) -> PLCover:
    comps = tuple((f"C{j + 1}", _tent(*arc)) for j, arc in enumerate(_chain_arcs(m)))
    return PLCover(comps, 4, CoverTarget.PROJ_LINE)


def _exclusive_region(m: int) -> Tuple[Fraction, Fraction]:
    """The part of arc 0 meeting no other chain arc."""
    o = Fraction(1, 4 * m)
    return o, Fraction(1, m) - o


def _build_m_max(g: int) -> PLCover:
    """Maximal real locus (s = g + 1) with covering number g + 1."""
    if g % 2 == 0:
        cover = _chain_cover(g + 2)
        return merge_components(cover, "C1", "C2", Fraction(1, g + 2))
    mc = g + 1
    cover = _chain_cover(mc)
    lo, hi = _exclusive_region(mc)
    span = hi - lo
    nested = _tent(lo + span / 4, lo + 3 * span / 4)
    comps = cover.components + ((f"C{mc + 1}", nested),)
    cover = PLCover(comps, 4, CoverTarget.PROJ_LINE)
    return merge_components(cover, "C1", f"C{mc + 1}", lo + span / 2)


def _split_region(kcov: int) -> Tuple[Fraction, Fraction]:
    """Doubly covered stretch of the first circle of _build_m_max(kcov - 1),
    shrunk to its middle half."""
    if kcov == 1:
        # Two long arcs overlapping at both ends; the merge consumed one
        # overlap, the other is the doubly covered stretch.
        o = Fraction(1, 8)
        return Fraction(1) - o / 2, Fraction(1) + o / 2
    if kcov % 2 == 1:
        # Even base genus: the merged circle spans chain arcs 0 and 1.
        m = kcov + 1
        o = Fraction(1, 4 * m)
        return Fraction(2, m) - o / 2, Fraction(2, m) + o / 2
    # Odd base genus: the merged circle's image is chain arc 0.
    mc = kcov
    o = Fraction(1, 4 * mc)
    return Fraction(1, mc) - o / 2, Fraction(1, mc) + o / 2


def _build_m_split(g: int, kcov: int) -> PLCover:
    """Maximal real locus with covering number kcov < g + 1."""
    cover = _build_m_max(kcov - 1)
    lo, hi = _split_region(kcov)
    n = g - kcov + 1
    spacing = (hi - lo) / (n + 1)
    label = "C1"
    for i in range(1, n + 1):
        cover, label = fold_split(cover, label, (lo + i * spacing) % 1, spacing / 4)
    return cover


def _build_separating(g: int, s: int, kcov: int) -> PLCover:
    """Separating case for s < g + 1 circles."""
    b = (g + 1 - s) // 2
    m = kcov + b
    cover = _chain_cover(m)
    lo, hi = _exclusive_region(m)
    extra = s - kcov
    comps = list(cover.components)
    slot = (hi - lo) / extra if extra else None
    for i in range(extra):
        a = lo + i * slot
        comps.append((f"C{m + 1 + i}", _tent(a + slot / 4, a + 3 * slot / 4)))
    cover = PLCover(tuple(comps), 4, CoverTarget.PROJ_LINE)
    for j in range(b):
        cover = merge_components(cover, "C1", f"C{j + 2}", Fraction(j + 1, m))
    return cover


def _build_orientable(g: int, s: int, kcov: int) -> PLCover:
    if s == g + 1:
        if kcov == s:
            return _build_m_max(g)
        return _build_m_split(g, kcov)
    return _build_separating(g, s, kcov)


def build_covnum(target: CoveringNumberTarget) -> Tuple[PLCover, CoverSpec]:
    """Build a degree-4 covering of the target type with every winding zero
    and the prescribed covering number.

    Returns the PL realization together with its symbolic specification.
    """
    g, s, a = target.top.g, target.top.s, target.top.a
    if a == 0:
        cover = _build_orientable(g, s, target.kcov)
    else:
        # Drop to the separating case one or two genera lower (matching the
        # circle-count parity), then smooth one or two conjugate pairs of
        # nodes away from the real locus; the arc picture is unchanged.
        down = 1 if (g - s) % 2 == 0 else 2
        cover = _build_orientable(g - down, s, target.kcov)
    spec = CoverSpec(
        target.top, CoverTarget.PROJ_LINE, 4, DegreeVector((0,) * s)
    )
    return cover, spec
