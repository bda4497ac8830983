"""Counts of rational plane curves carrying four marked points of fixed cross-ratio.

Fixed side, written N(d < ...): a rational curve of degree d through 3d - 2
general points, marked by two pairs {p1, q1}, {p2, q2} of fixed cross-ratio,
with the marked points sent to fixed curves.  A parenthesised entry "(e)"
sends both points of a pair to one curve of degree e; plain entries send
single points to separate curves.

Dual side, written N(d, ... > (e2)): the marked curve C of degree d is
fixed, the first pair goes to fixed curves and the second pair to a
varying rational curve of degree e2 through 3e2 - 2 general points.

Every count is labelled: the marked points are told apart, except where a
division by the two-fold symmetry swapping both pairs is stated.
"""

from __future__ import annotations

from dataclasses import dataclass

from .engine import (
    BoundaryTerm,
    CountCache,
    CountKey,
    PlacedCount,
    binomial as C,
    get_or_compute,
    placed_degrees,
    theorem1_sum,
)
from .errors import DivisibilityError, PreconditionError, UnsupportedShapeError
from .plane_counts import n_d

FIXED_PATTERNS = ("(1),(1)", "1,1,(1)", "1,1,1,1")
DUAL_PATTERNS = ("(1)>(1)", "1,1>(1)", "1,1>(e2)")


@dataclass(frozen=True)
class CrossRatioKey:
    side: str
    d: int
    pattern: str
    e2: int | None = None

    def __post_init__(self):
        if self.side == "<":
            if self.pattern not in FIXED_PATTERNS or self.e2 is not None:
                raise PreconditionError(f"bad fixed-side key {self}")
        elif self.side == ">":
            if self.pattern not in DUAL_PATTERNS or self.e2 is None or self.e2 < 1:
                raise PreconditionError(f"bad dual-side key {self}")
        else:
            raise PreconditionError(f"side must be '<' or '>', got {self.side!r}")
        if self.d < 1:
            raise PreconditionError(f"degree must be positive, got {self.d}")

    def count_key(self) -> CountKey:
        if self.side == "<":
            return CountKey.make("crossratio", side="fixed", d=self.d, pattern=self.pattern)
        return CountKey.make("crossratio", side="dual", d=self.d, pattern=self.pattern, e2=self.e2)


def _check_degree(d: int, name: str = "d") -> None:
    if not isinstance(d, int) or d < 1:
        raise PreconditionError(f"{name} must be a positive integer, got {d!r}")


# -------------------------------------------------------------- fixed side

def basic_fixed(d: int, pattern: str, cache: CountCache | None = None) -> int:
    _check_degree(d)
    key = CrossRatioKey("<", d, pattern)

    def produce():
        if d == 1:
            # a line meets a line once, so a pair cannot go to one line;
            # four separate lines: the cross-ratio equation along a pencil
            # of lines is quadratic
            return 2 if pattern == "1,1,1,1" else 0
        return fixed_template(d, pattern, cache)

    return get_or_compute(cache, key.count_key(), produce)


def pair_pair_printed(d: int, cache: CountCache | None = None) -> int:
    """The three-group recursion for N(d < (1),(1)) in its published form.

    Kept for comparison only: it omits the tail count N_d2 in its first
    group, the tail point choice d2 in its third group, the configurations
    with the tail point taken from the second pair and the boundary where
    the components meet on a line; it gives 0 at d = 2 where the direct
    solve finds 8.
    """
    _check_degree(d)
    if d == 1:
        return 0

    def produce():
        f = 3 * d - 5
        terms = []
        for d1 in range(1, d):
            d2 = d - d1
            a1 = basic_fixed(d1, "1,1,(1)", cache)
            a2 = basic_fixed(d2, "1,1,(1)", cache)
            nn = n_d(d1, cache) * n_d(d2, cache)
            terms.append(BoundaryTerm(1, d1, d2, d2 * d2 * C(f, 3 * d2 - 2) * a1,
                                      d2 * d2 * C(f, 3 * d1 - 1) * a1))
            terms.append(BoundaryTerm(1, d1, d2, d1 * d1 * C(f, 3 * d1 - 2) * a2,
                                      d1 * d1 * C(f, 3 * d2 - 1) * a2))
            terms.append(BoundaryTerm(
                1, d1, d2,
                (d1 * d1 * (d1 - 1) * C(f, 3 * d1 - 2) + d2 * d2 * (d2 - 1) * C(f, 3 * d2 - 2)) * nn,
                (d1 * d1 * (d1 - 1) * C(f, 3 * d1 - 1) + d2 * d2 * (d2 - 1) * C(f, 3 * d2 - 1)) * nn))
        return theorem1_sum(1, terms)

    return get_or_compute(cache, CountKey.make("crossratio", side="printed", d=d,
                                               pattern="(1),(1)"), produce)


# Removing one marked point m from a pattern and letting the attaching node
# take its slot.  Entries: (number of such m, pattern left on the core,
# target choices for the three remaining points on an unmarked core of
# degree dA as a function of dA).
_TAIL_CHOICES = {
    "(1),(1)": (
        (2, "1,1,(1)", lambda a: a * a * (a - 1)),  # m from the first pair
        (2, "1,1,(1)", lambda a: a * a * (a - 1)),  # m from the second pair, by symmetry
    ),
    "1,1,(1)": (
        (2, "1,1,(1)", lambda a: a * a * (a - 1)),  # m one of the single points
        (2, "1,1,1,1", lambda a: a ** 3),           # m from the pair on one line
    ),
    "1,1,1,1": (
        (4, "1,1,1,1", lambda a: a ** 3),
    ),
}

# Pairs sent to a single line, per pattern.
_JOINT_PAIRS = {"(1),(1)": 2, "1,1,(1)": 1, "1,1,1,1": 0}


def fixed_template_terms(d: int, pattern: str, cache: CountCache | None) -> list[BoundaryTerm]:
    """Marked boundary terms of N(d < pattern), all patterns given by lines.

    For an ordered split (d1, d2) and a choice of core component A (the
    other is the tail B) the reducible members are:

    * 3|1, tail through 3dB - 1 points: B chosen first, then the image of
      the tail point m on B, then the marked core: weight
      N_dB dB * dB N(dA < P_m), the second dB being the attaching slot,
      which is mapped to B.
    * 3|1, core through 3dA - 1 points: the core is an unmarked curve, the
      three remaining points go to intersection points, the cross-ratio
      fixes the attaching point, then B through it, then m on B:
      weight N_dA * choices * N_dB dB.
    * 4|0: every marked point on the core, tail free: product type with
      weight N(dA < P) N_dB dA dB.

    A pair sent to one line E adds a boundary where the components meet
    on E and a contracted component at that point carries the pair, the
    other pair being split between the two sides.  It has ell = 2.
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
            for mult, rest, choices in _TAIL_CHOICES[pattern]:
                places.append(PlacedCount(mult * nb * db * db * basic_fixed(da, rest, cache),
                                          tail, 3 * db - 1))
                places.append(PlacedCount(mult * na * choices(da) * nb * db, core, 3 * da - 1))
            places.append(PlacedCount(basic_fixed(da, pattern, cache) * nb * da * db,
                                      tail, 3 * db - 1))
        d11, d02 = placed_degrees(free, places)
        terms.append(BoundaryTerm(1, d1, d2, d11, d02))
        joint = _JOINT_PAIRS[pattern]
        if joint:
            # other pair: one point on each side, in either order (d1 d2 each);
            # one component fixed by its points, the other through one of
            # its intersections with E
            w = joint * 2 * d1 * d2 * n1 * n2
            d11, d02 = placed_degrees(free, [PlacedCount(w * d1, 1, 3 * d1 - 1),
                                             PlacedCount(w * d2, 2, 3 * d2 - 1)])
            terms.append(BoundaryTerm(2, d1, d2, d11, d02))
    return terms


def fixed_template(d: int, pattern: str, cache: CountCache | None = None) -> int:
    """Evaluate the boundary template for N(d < pattern), d >= 2."""
    if pattern not in FIXED_PATTERNS:
        raise PreconditionError(f"unknown fixed-side pattern {pattern!r}")
    if d < 2:
        raise PreconditionError("the template needs d >= 2")
    return theorem1_sum(1, fixed_template_terms(d, pattern, cache))


def expand_fixed(d: int, e1: int, f1: int | None = None, e2: int = 1, f2: int | None = None,
                 cache: CountCache | None = None) -> int:
    """N(d < ...) for arbitrary curve degrees, by multilinearity.

    Shapes: (e1),(e2) when f1 and f2 are absent; e1,f1,(e2); (e1),e2,f2;
    and e1,f1,e2,f2.  A pair sent to a degree-e curve splits into e choices
    of a common line and e(e - 1) ordered choices of two lines.
    """
    for name, v in (("e1", e1), ("e2", e2), ("f1", f1), ("f2", f2)):
        if v is not None and (not isinstance(v, int) or v < 1):
            raise UnsupportedShapeError(f"{name} must be a positive integer, got {v!r}")
    a = lambda: basic_fixed(d, "(1),(1)", cache)  # noqa: E731
    b = lambda: basic_fixed(d, "1,1,(1)", cache)  # noqa: E731
    c = lambda: basic_fixed(d, "1,1,1,1", cache)  # noqa: E731
    if f1 is None and f2 is None:
        return (e1 * e2 * a() + e1 * e2 * (e1 + e2 - 2) * b()
                + e1 * e2 * (e1 - 1) * (e2 - 1) * c())
    if f2 is None:
        return e1 * f1 * e2 * (b() + (e2 - 1) * c())
    if f1 is None:
        return e2 * f2 * e1 * (b() + (e1 - 1) * c())
    return e1 * f1 * e2 * f2 * c()


# --------------------------------------------------------------- dual side

def dual_closed(d: int, pattern: str) -> int:
    """Closed forms when the varying curve is a line through one point.

    ``M`` counts ordered pairs (a, b) on the normalisation with a/b equal to
    the cross-ratio or its inverse and a, b identified by the projection
    from the point; the other patterns use that normalisation, which counts
    each labelled configuration twice.
    """
    _check_degree(d)
    m = 4 * (d - 1)
    if pattern == "M":
        return m
    if pattern == "1,1>(1)":
        return d * d * m
    if pattern == "(1)>(1)":
        return d * d * m // 2
    raise UnsupportedShapeError(f"no closed form for dual pattern {pattern!r}")


def dual_points(d: int, e: int, cache: CountCache | None = None) -> int:
    """Varying curves E of degree e through 3e - 2 points for a fixed curve C.

    The images of p1 and q1 are fixed general points of C, p2 and q2 are
    labelled and must land on E.  For e = 1 there are 2(d - 1) solutions.
    For e >= 2 the curve E degenerates to X + Y:

    * both p2, q2 on X: the count for X times a free Y meeting it;
    * p2 on X, q2 on Y: the component fixed by its points gives d eX
      choices for its point, the cross-ratio fixes the other image on C,
      and the other component passes through it.
    """
    _check_degree(d)
    _check_degree(e, "e")

    def produce():
        if e == 1:
            return 2 * (d - 1)
        return theorem1_sum(1, dual_terms(d, e, cache))

    return get_or_compute(cache, CountKey.make("crossratio", side="points", d=d, e2=e), produce)


def dual_terms(d: int, e: int, cache: CountCache | None) -> list[BoundaryTerm]:
    """Marked boundary terms of ``dual_points`` for E = X + Y."""
    free = 3 * e - 5
    terms = []
    for e1 in range(1, e):
        ee = (e1, e - e1)
        places = []
        for x in (1, 2):
            y = 3 - x
            ex, ey = ee[x - 1], ee[y - 1]
            nx, ny = n_d(ex, cache), n_d(ey, cache)
            places.append(PlacedCount(dual_points(d, ex, cache) * ny * ex * ey, y, 3 * ey - 1))
            # p2 on X, q2 on Y, X through its own points, then Y
            places.append(PlacedCount(nx * d * ex * ny, x, 3 * ex - 1))
            # p2 on X, q2 on Y, Y through its own points, then X
            places.append(PlacedCount(ny * d * ey * nx, y, 3 * ey - 1))
        d11, d02 = placed_degrees(free, places)
        terms.append(BoundaryTerm(1, e1, e - e1, d11, d02))
    return terms


def dual_recursive(d: int, e2: int, cache: CountCache | None = None) -> int:
    """N(d, 1,1 > (e2)), normalised like the closed form at e2 = 1.

    The d^2 choices of the images of p1 and q1 times twice the
    point-level count.
    """
    _check_degree(d)
    _check_degree(e2, "e2")
    key = CrossRatioKey(">", d, "1,1>(1)" if e2 == 1 else "1,1>(e2)", e2)
    return get_or_compute(cache, key.count_key(),
                          lambda: 2 * d * d * dual_points(d, e2, cache))


def dual_labelled(d: int, e2: int, cache: CountCache | None = None) -> int:
    """N(d, 1,1 > (e2)) with every marked point labelled."""
    return d * d * dual_points(d, e2, cache)


def dual_pair(d: int, e2: int, cache: CountCache | None = None) -> int:
    """N(d, (1) > (e2)), half of N(d, 1,1 > (e2))."""
    if e2 == 1:
        return dual_closed(d, "(1)>(1)")
    full = dual_recursive(d, e2, cache)
    if full % 2:
        raise DivisibilityError(f"N({d},1,1>({e2})) = {full} is odd")
    return full // 2


def expand_dual(d: int, e1: int, f1: int | None = None, e2: int = 1,
                cache: CountCache | None = None) -> int:
    """N(d, (e1) > (e2)) or, with f1 given, N(d, e1, f1 > (e2))."""
    for name, v in (("e1", e1), ("e2", e2), ("f1", f1)):
        if v is not None and (not isinstance(v, int) or v < 1):
            raise UnsupportedShapeError(f"{name} must be a positive integer, got {v!r}")
    if f1 is not None:
        return e1 * f1 * dual_recursive(d, e2, cache)
    return e1 * dual_pair(d, e2, cache) + e1 * (e1 - 1) * dual_recursive(d, e2, cache)
