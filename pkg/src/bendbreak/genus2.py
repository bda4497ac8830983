"""Cross-ratio counts with a node, and genus-two plane curves.

Nodal side: the second pair {p2, q2} is glued, f(p2) = f(q2), while the
first pair meets a curve E of degree e.

* ``nodal_cr_fixed(d, e)``, written N(d < (e)): rational curves of degree
  d through 3d - 2 general points; E fixed.
* ``nodal_cr_dual(d, e)``, written N(d > (e)): the curve of degree d is
  fixed and E varies through 3e - 2 general points.

Both are quotients by the involution exchanging the points within both
pairs, which is free on labelled solutions because the pattern is
symmetric.  ``nodal_labelled`` keeps the labels and also covers the
pattern "1,1" where p1 and q1 go to two distinct lines.
"""

from __future__ import annotations

from dataclasses import dataclass

from .cross_ratio import dual_points, expand_fixed
from .engine import (
    BoundaryTerm,
    CountCache,
    CountKey,
    PlacedCount,
    boundary_sum,
    get_or_compute,
    placed_degrees,
    theorem1_sum,
)
from .errors import DivisibilityError, NegativeCountError, PreconditionError
from .plane_counts import b_deg, n_d

NODAL_PATTERNS = ("(1)", "1,1")


def node_count(d: int) -> int:
    """Nodes of a general rational plane curve of degree d."""
    return (d - 1) * (d - 2) // 2


def _check(name: str, v: int) -> None:
    if not isinstance(v, int) or isinstance(v, bool) or v < 1:
        raise PreconditionError(f"{name} must be a positive integer, got {v!r}")


def _halve(v: int, what: str) -> int:
    q, rem = divmod(v, 2)
    if rem:
        raise DivisibilityError(f"{what} = {v} is odd")
    return q


# ------------------------------------------------------------ nodal, fixed

def _glued_pair_fixed(d: int, pattern: str, e2: int, cache: CountCache | None) -> int:
    """Labelled N(d < pattern, (e2)): the glued pair replaced by a pair on a degree-e2 curve."""
    if pattern == "(1)":
        return expand_fixed(d, 1, None, e2, None, cache)
    return expand_fixed(d, 1, 1, e2, None, cache)


def nodal_terms(d: int, pattern: str, cache: CountCache | None) -> list[BoundaryTerm]:
    """Marked boundary terms of the labelled nodal count, with E a line.

    For every ordered split and core component A (tail B):

    * 4|0: the nodal count on A, B free.
    * glued point on the tail, B through its points: the core sees a pair
      (node, other glued point) sent to B.
    * glued point on the tail, A through its points: the first pair
      chooses points of A on its lines and B varies through the node.
    * first-pair point m on the tail, B through its points: m picks a
      point of B, the core sees the node sent to B and the other point
      to its line.
    * m on the tail, A through its points: the other point picks one
      point of A, the glued pair one of the ordered preimage pairs of a
      node, the cross-ratio fixes the node, B passes through it.

    With p1, q1 on one line, the components may also meet on it with a
    contracted component carrying the first pair there; the glued pair
    then sits over another intersection point, one point on each side.
    That boundary has ell = 2.
    """
    free = 3 * d - 5
    terms = []
    for d1 in range(1, d):
        d2 = d - d1
        n1, n2 = n_d(d1, cache), n_d(d2, cache)
        places = []
        for core in (1, 2):
            tail = 3 - core
            da, db = (d1, d2) if core == 1 else (d2, d1)
            na, nb = (n1, n2) if core == 1 else (n2, n1)
            first_pair = da * (da - 1) if pattern == "(1)" else da * da
            places.append(PlacedCount(nodal_labelled(da, pattern, cache) * nb * da * db,
                                      tail, 3 * db - 1))
            places.append(PlacedCount(2 * nb * _glued_pair_fixed(da, pattern, db, cache),
                                      tail, 3 * db - 1))
            places.append(PlacedCount(2 * na * first_pair * dual_points(da, db, cache),
                                      core, 3 * da - 1))
            places.append(PlacedCount(2 * nb * db * db * nodal_labelled(da, "1,1", cache),
                                      tail, 3 * db - 1))
            places.append(PlacedCount(2 * na * da * 2 * node_count(da) * nb * db,
                                      core, 3 * da - 1))
        d11, d02 = placed_degrees(free, places)
        terms.append(BoundaryTerm(1, d1, d2, d11, d02))
        if pattern == "(1)":
            w = 2 * (d1 * d2 - 1) * n1 * n2
            d11, d02 = placed_degrees(free, [PlacedCount(w * d1, 1, 3 * d1 - 1),
                                             PlacedCount(w * d2, 2, 3 * d2 - 1)])
            terms.append(BoundaryTerm(2, d1, d2, d11, d02))
    return terms


def nodal_labelled(d: int, pattern: str, cache: CountCache | None = None) -> int:
    """Labelled nodal count with the first pair on lines given by ``pattern``."""
    _check("d", d)
    if pattern not in NODAL_PATTERNS:
        raise PreconditionError(f"unknown nodal pattern {pattern!r}")

    def produce():
        if d <= 2:
            return 0  # no nodes
        return theorem1_sum(1, nodal_terms(d, pattern, cache))

    return get_or_compute(cache, CountKey.make("nodalcr", side="labelled", d=d, pattern=pattern),
                          produce)


def nodal_cr_fixed(d: int, e: int, cache: CountCache | None = None) -> int:
    """N(d < (e)): E of degree e splits into e common lines or e(e - 1) ordered pairs."""
    _check("d", d)
    _check("e", e)

    def produce():
        full = (e * nodal_labelled(d, "(1)", cache)
                + e * (e - 1) * nodal_labelled(d, "1,1", cache))
        return _halve(full, f"labelled N({d}<({e}))")

    return get_or_compute(cache, CountKey.make("nodalcr", side="fixed", d=d, e=e), produce)


# ------------------------------------------------------------- nodal, dual

def nodal_cr_dual(d: int, e: int, cache: CountCache | None = None) -> int:
    """N(d > (e)): one node of the fixed curve, its two preimages in either order."""
    _check("d", d)
    _check("e", e)
    return get_or_compute(
        cache, CountKey.make("nodalcr", side="dual", d=d, e=e),
        lambda: _halve(2 * node_count(d) * dual_points(d, e, cache), f"labelled N({d}>({e}))"))


# ---------------------------------------------------------------- genus two

@dataclass(frozen=True)
class Genus2BoundaryTerm:
    """A boundary family of the genus-two count, before its marking's ell."""

    kind: str  # "Z1" or "Z2"
    d1: int
    d2: int
    d11: int
    d02: int

    @property
    def ell(self) -> int:
        return 1 if self.kind == "Z1" else 2

    def as_boundary_term(self) -> BoundaryTerm:
        return BoundaryTerm(self.ell, self.d1, self.d2, self.d11, self.d02)


def _genus2_free(d: int) -> int:
    return 3 * d - 2


def z1_degrees(d: int, d1: int, d2: int, cache: CountCache | None = None) -> tuple[int, int]:
    """(d11, d02) of the split where one component carries the glued pair.

    The carrying component's first pair lies over the other component,
    giving the fixed count when the other component goes through its
    points and the dual count when the carrier does.  C1 or C2 may carry.
    """
    if d1 < 1 or d2 < 1 or d1 + d2 != d:
        raise PreconditionError(f"bad split {d1} + {d2} of {d}")
    n1, n2 = n_d(d1, cache), n_d(d2, cache)
    places = [
        PlacedCount(n2 * nodal_cr_fixed(d1, d2, cache), 2, 3 * d2 - 1),
        PlacedCount(n1 * nodal_cr_dual(d1, d2, cache), 1, 3 * d1 - 1),
        PlacedCount(n1 * nodal_cr_fixed(d2, d1, cache), 1, 3 * d1 - 1),
        PlacedCount(n2 * nodal_cr_dual(d2, d1, cache), 2, 3 * d2 - 1),
    ]
    return placed_degrees(_genus2_free(d), places)


def z2_degrees(d: int, d1: int, d2: int, cache: CountCache | None = None) -> tuple[int, int]:
    """(d11, d02) of the split with two components tangent to each other.

    One component goes through its points, the other is tangent to it at
    one point and meets it in d1 d2 - 2 further points, one of which is
    the other gluing.
    """
    if d1 < 1 or d2 < 1 or d1 + d2 != d:
        raise PreconditionError(f"bad split {d1} + {d2} of {d}")
    others = d1 * d2 - 2
    places = [
        PlacedCount(b_deg(d1, d2, 0, cache) * others, 2, 3 * d2 - 1),
        PlacedCount(b_deg(d2, d1, 0, cache) * others, 1, 3 * d1 - 1),
    ]
    return placed_degrees(_genus2_free(d), places)


def genus2_terms(d: int, cache: CountCache | None = None) -> list[Genus2BoundaryTerm]:
    out = []
    for d1 in range(1, d):
        d2 = d - d1
        out.append(Genus2BoundaryTerm("Z1", d1, d2, *z1_degrees(d, d1, d2, cache)))
        if d1 * d2 >= 2:
            out.append(Genus2BoundaryTerm("Z2", d1, d2, *z2_degrees(d, d1, d2, cache)))
    return out


def n_d_genus2(d: int, cache: CountCache | None = None) -> int:
    """Degree-d curves of genus two with fixed general modulus of the glued model."""
    _check("d", d)

    def produce():
        if d <= 3:
            return 0
        total = boundary_sum(t.as_boundary_term() for t in genus2_terms(d, cache))
        v = _halve(total, f"genus-two boundary sum for d = {d}")
        if v < 0:
            raise NegativeCountError(f"genus-two count {v} for d = {d}")
        return v

    return get_or_compute(cache, CountKey.make("ndg2", d=d), produce)

