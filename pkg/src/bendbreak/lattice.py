"""Divisor classes on the plane blown up in r <= 6 general points.

A class is written c = bH - sum a_i E_i and printed ``b;a1,...,ar``, so the
exceptional class E_1 reads ``0;-1,0,...``.  The pairing is
b b' - sum a_i a'_i and the canonical class is K = (-3; -1, ..., -1).
"""

from __future__ import annotations

import math
import re
from dataclasses import dataclass, field
from functools import lru_cache
from itertools import permutations, product

from .errors import ClassFormatError, ModelMismatchError, PreconditionError

MAX_POINTS = 6


@dataclass(frozen=True)
class SurfaceModel:
    r: int

    def __post_init__(self):
        if not isinstance(self.r, int) or not 0 <= self.r <= MAX_POINTS:
            raise PreconditionError(f"r must be an integer in 0..{MAX_POINTS}, got {self.r!r}")

    @property
    def k_squared(self) -> int:
        return 9 - self.r

    def canonical(self) -> "NSClass":
        return NSClass(-3, (-1,) * self.r)

    def anticanonical(self) -> "NSClass":
        return NSClass(3, (1,) * self.r)

    def hyperplane(self) -> "NSClass":
        return NSClass(1, (0,) * self.r)

    def exceptional(self, i: int) -> "NSClass":
        """E_i for 1 <= i <= r."""
        if not 1 <= i <= self.r:
            raise PreconditionError(f"no exceptional class E_{i} when r = {self.r}")
        a = [0] * self.r
        a[i - 1] = -1
        return NSClass(0, tuple(a))

    def make(self, b: int, *a: int) -> "NSClass":
        if len(a) != self.r:
            raise ClassFormatError(f"expected {self.r} coefficients, got {len(a)}")
        return NSClass(b, tuple(a))


@dataclass(frozen=True, order=True)
class NSClass:
    b: int
    a: tuple[int, ...] = field(default=())

    @property
    def r(self) -> int:
        return len(self.a)

    def __str__(self) -> str:
        return f"{self.b};" + ",".join(str(x) for x in self.a)

    def __add__(self, other: "NSClass") -> "NSClass":
        _same_model(self, other)
        return NSClass(self.b + other.b, tuple(x + y for x, y in zip(self.a, other.a)))

    def __sub__(self, other: "NSClass") -> "NSClass":
        _same_model(self, other)
        return NSClass(self.b - other.b, tuple(x - y for x, y in zip(self.a, other.a)))

    def __neg__(self) -> "NSClass":
        return NSClass(-self.b, tuple(-x for x in self.a))

    def square(self) -> int:
        return intersect(self, self)


_LITERAL = re.compile(r"-?\d+;(?:-?\d+(?:,-?\d+)*)?")


def parse_class(text: str, model: SurfaceModel) -> NSClass:
    if not isinstance(text, str) or not _LITERAL.fullmatch(text):
        raise ClassFormatError(f"malformed class literal {text!r}; expected 'b;a1,...,ar'")
    head, tail = text.split(";")
    a = tuple(int(x) for x in tail.split(",")) if tail else ()
    if len(a) != model.r:
        raise ClassFormatError(f"class {text!r} has {len(a)} coefficients but r = {model.r}")
    return NSClass(int(head), a)


def _same_model(c1: NSClass, c2: NSClass) -> None:
    if len(c1.a) != len(c2.a):
        raise ModelMismatchError(f"classes {c1} and {c2} live on different surfaces")


def intersect(c1: NSClass, c2: NSClass) -> int:
    _same_model(c1, c2)
    return c1.b * c2.b - sum(x * y for x, y in zip(c1.a, c2.a))


def antik_degree(c: NSClass) -> int:
    return 3 * c.b - sum(c.a)


def arithmetic_genus(c: NSClass) -> int:
    """p_a = 1 + (c^2 + K.c)/2."""
    return 1 + (c.square() - antik_degree(c)) // 2


def is_good(c: NSClass) -> bool:
    return antik_degree(c) >= 0 and c.square() >= 0


def is_line(c: NSClass) -> bool:
    return antik_degree(c) == 1 and c.square() == -1


def normalize_sorted(c: NSClass) -> NSClass:
    return NSClass(c.b, tuple(sorted(c.a, reverse=True)))


@lru_cache(maxsize=None)
def _lines(r: int) -> tuple[NSClass, ...]:
    # c^2 = -1 and -K.c = 1 give sum a = 3b - 1 and sum a^2 = b^2 + 1, so by
    # Cauchy-Schwarz (3b - 1)^2 <= 6(b^2 + 1), i.e. 0 <= b <= 2 and |a_i| <= 2.
    out = []
    for b in range(0, 3):
        for a in product(range(-2, 3), repeat=r):
            c = NSClass(b, a)
            if is_line(c):
                out.append(c)
    return tuple(sorted(out))


def enumerate_lines(model: SurfaceModel) -> tuple[NSClass, ...]:
    return _lines(model.r)


def extremal_rays(model: SurfaceModel) -> tuple[NSClass, ...]:
    """Generators of the effective cone used for the nef test."""
    extra: tuple[NSClass, ...] = ()
    if model.r == 0:
        extra = (NSClass(1, ()),)
    elif model.r == 1:
        extra = (NSClass(1, (0,)), NSClass(1, (1,)))
    return enumerate_lines(model) + extra


def _is_nef(c: NSClass) -> bool:
    return all(intersect(c, d) >= 0 for d in extremal_rays(SurfaceModel(c.r)))


def is_representable(c: NSClass) -> bool:
    if is_line(c):
        return True
    return c.square() >= 0 and antik_degree(c) >= 2 and _is_nef(c)


# ------------------------------------------------------------ enumeration

def _descending_vectors(r: int, hi: int, lo: int, smin: int, smax: int, sqmax: int):
    """Descending integer r-tuples in [lo, hi] with sum in [smin, smax], sum of squares <= sqmax."""

    def rec(k, top, s, sq):
        if k == 0:
            if smin <= s <= smax:
                yield ()
            return
        for x in range(top, lo - 1, -1):
            nsq = sq + x * x
            if nsq > sqmax:
                continue
            if s + k * x < smin:
                break
            if s + x + (k - 1) * lo > smax:
                continue
            for rest in rec(k - 1, x, s + x, nsq):
                yield (x,) + rest

    yield from rec(r, hi, 0, 0)


@lru_cache(maxsize=None)
def _sorted_catalog(r: int, max_degree: int) -> tuple[NSClass, ...]:
    """Sorted representatives of representable classes with 1 <= -K.c <= max_degree."""
    out = [c for c in _lines(r) if c == normalize_sorted(c)] if max_degree >= 1 else []
    # nef with c^2 >= 0: a_i = c.E_i >= 0 (or r <= 1 bounds), and
    # sum a <= sqrt(6) b, so -K.c >= 0.55 b; b <= 2 max_degree suffices.
    for b in range(0, 2 * max_degree + 1):
        for a in _descending_vectors(r, b, 0, 3 * b - max_degree, 3 * b - 2, b * b):
            c = NSClass(b, a)
            if is_representable(c):
                out.append(c)
    return tuple(sorted(set(out)))


@lru_cache(maxsize=None)
def _catalog(r: int, max_degree: int) -> tuple[NSClass, ...]:
    out = set()
    for c in _sorted_catalog(r, max_degree):
        for a in set(permutations(c.a)):
            out.add(NSClass(c.b, a))
    return tuple(sorted(out))


def representable_classes(model: SurfaceModel, max_degree: int) -> tuple[NSClass, ...]:
    """All representable classes with 1 <= -K.c <= max_degree, sorted by (b, a)."""
    return _catalog(model.r, max_degree)


def positive_classes(model: SurfaceModel, max_degree: int, sorted_only: bool = True):
    """Classes with c^2 > 0 and 0 < -K.c <= max_degree.

    With ``sorted_only`` only descending representatives are produced.  The
    bound b <= 2 max_degree follows from sum a^2 < b^2 and r <= 6.
    """
    r = model.r
    for b in range(1, 2 * max_degree + 1):
        lo = -math.isqrt(b * b)
        for a in _descending_vectors(r, b, lo, 3 * b - max_degree, 3 * b - 1, b * b - 1):
            if sorted_only:
                yield NSClass(b, a)
            else:
                for p in sorted(set(permutations(a))):
                    yield NSClass(b, p)


def enumerate_decompositions(c: NSClass) -> list[tuple[NSClass, NSClass]]:
    """Ordered pairs (c1, c2) of representable classes with c1 + c2 = c."""
    k = antik_degree(c)
    if k < 2:
        return []
    catalog = representable_classes(SurfaceModel(c.r), k - 1)
    members = set(catalog)
    return [(c1, c - c1) for c1 in catalog if (c - c1) in members]


def box_decompositions(c: NSClass, margin: int = 3) -> list[tuple[NSClass, NSClass]]:
    """Reference scan over 0 <= b1 <= b + margin, |a1_i| <= max|a_i| + margin.

    Slow; used to cross-check ``enumerate_decompositions`` on small r.
    """
    k = antik_degree(c)
    bound = max((abs(x) for x in c.a), default=0) + margin
    out = []
    for b1 in range(0, c.b + margin + 1):
        for a1 in product(range(-bound, bound + 1), repeat=c.r):
            c1 = NSClass(b1, a1)
            if not 1 <= antik_degree(c1) <= k - 1:
                continue
            c2 = c - c1
            if is_representable(c1) and is_representable(c2):
                out.append((c1, c2))
    return sorted(out)


# --------------------------------------------------- positivity certificate

@dataclass(frozen=True)
class PropACertificate:
    """Record of the switching argument for N(c) = b^2 - sum a_i^2 > 2 a_r + 1.

    ``pivot`` plays the role of a_r, the least intersection number of c
    with a line (or the least positive one when that is 0 and the first
    attempt fails).  ``switches`` lists (decreased index, increased index)
    pairs in the coordinates of ``original``.
    """

    original: NSClass
    switches: tuple[tuple[int, int], ...]
    flattened: NSClass
    n_value: int
    pivot: int | None
    threshold: int | None
    verdict: bool
    special: str | None = None

    def replay(self) -> bool:
        """Re-apply the switches and confirm every recorded invariant."""
        a = list(self.original.a)
        b = self.original.b
        total = sum(a)
        n = b * b - sum(x * x for x in a)
        for dec, inc in self.switches:
            a[dec] -= 1
            a[inc] += 1
            n_new = b * b - sum(x * x for x in a)
            if sum(a) != total or n_new > n:
                return False
            n = n_new
        if NSClass(b, tuple(a)) != self.flattened or n != self.n_value:
            return False
        if self.verdict and self.special is None:
            return self.threshold is not None and self.n_value > self.threshold
        return True


def _flatten(c: NSClass, pivot: int, lines: tuple[NSClass, ...]):
    """Move weight inward along the sorted tail while every c.D stays >= pivot."""
    r = c.r
    order = sorted(range(r), key=lambda i: (-c.a[i], i))
    s = [c.a[i] for i in order]
    steps = []

    def legal(t):
        if any(t[i] < t[i + 1] for i in range(r - 1)):
            return False
        cand = NSClass(c.b, tuple(t))
        return all(intersect(cand, d) >= pivot for d in lines)

    changed = True
    while changed:
        changed = False
        for j in range(r - 2, 0, -1):
            if s[j] > s[r - 1]:
                t = s[:]
                t[j] -= 1
                t[j - 1] += 1
                if legal(t):
                    s = t
                    steps.append((order[j], order[j - 1]))
                    changed = True
                    break
    a = [0] * r
    for pos, idx in enumerate(order):
        a[idx] = s[pos]
    return NSClass(c.b, tuple(a)), tuple(steps)


def proposition_a_check(c: NSClass) -> PropACertificate:
    """Check b^2 - sum a_i^2 > 2 a_r + 1 for a class with c^2 > 0 and c.K < 0."""
    if c.square() <= 0 or antik_degree(c) <= 0:
        raise PreconditionError(f"class {c} needs c^2 > 0 and c.K < 0")
    model = SurfaceModel(c.r)
    n0 = c.square()

    def special(tag):
        return PropACertificate(c, (), c, n0, None, None, True, tag)

    if antik_degree(c) <= 2:
        return special("low-degree")
    lines = enumerate_lines(model)
    if not lines:
        return special("plane")

    degrees = sorted({intersect(c, d) for d in lines})
    pivots = [degrees[0]]
    if degrees[0] == 0:
        pivots += [x for x in degrees if x > 0][:1]
    cert = None
    for p in pivots:
        if p > 0:
            flat, steps = _flatten(c, p, lines)
        else:
            flat, steps = c, ()
        n = flat.square()
        cert = PropACertificate(c, steps, flat, n, p, 2 * p + 1, n > 2 * p + 1)
        if cert.verdict:
            return cert
    if c == model.anticanonical():
        return PropACertificate(c, cert.switches, cert.flattened, cert.n_value, cert.pivot,
                                cert.threshold, True, "canonical-class")
    if arithmetic_genus(c) == 0:
        # rational classes need no positivity argument
        return PropACertificate(c, cert.switches, cert.flattened, cert.n_value, cert.pivot,
                                cert.threshold, True, "genus-zero")
    return cert
