"""Rational curve counts on del Pezzo surfaces and in the plane.

N_c counts irreducible rational curves of class c through -K.c - 1 general
points.  Classes with -K.c <= 3 are below the reach of the degeneration
recursion and come from a ``SeedTable``.
"""

from __future__ import annotations

import hashlib
import json
from dataclasses import dataclass, field

from .engine import (
    BoundaryTerm,
    CountCache,
    CountKey,
    PlacedCount,
    binomial,
    get_or_compute,
    parallel_map,
    placed_degrees,
    theorem1_sum,
)
from .errors import (
    MissingSeedError,
    ModelMismatchError,
    NegativeCountError,
    NotRepresentableError,
    PreconditionError,
    SeedFileError,
)
from .lattice import (
    NSClass,
    SurfaceModel,
    antik_degree,
    enumerate_decompositions,
    intersect,
    is_line,
    is_representable,
    normalize_sorted,
    parse_class,
)


@dataclass(frozen=True)
class Seed:
    count: int
    note: str


def default_seed(c: NSClass) -> Seed | None:
    """Built-in base count for a representable class with -K.c <= 3, if known."""
    k, sq = antik_degree(c), c.square()
    if is_line(c):
        return Seed(1, "line: rigid")
    if k == 2 and sq == 0:
        return Seed(1, "conic-bundle fibre through one point")
    if k == 3 and sq == 1:
        return Seed(1, "net member through two points")
    if k == 3 and sq == 3:
        return Seed(12, "anticanonical pencil through two points: e(S) + K^2 nodal members")
    return None


@dataclass
class SeedTable:
    """Base-case counts keyed by (r, sorted class); entries override defaults."""

    overrides: dict[tuple[int, NSClass], Seed] = field(default_factory=dict)

    def lookup(self, c: NSClass) -> Seed | None:
        key = (c.r, normalize_sorted(c))
        if key in self.overrides:
            return self.overrides[key]
        return default_seed(key[1])

    def fingerprint(self) -> str:
        if not self.overrides:
            return "default"
        rows = sorted((r, str(c), str(s.count)) for (r, c), s in self.overrides.items())
        digest = hashlib.sha256(json.dumps(rows).encode()).hexdigest()
        return digest[:16]

    def overridden_defaults(self) -> list[tuple[int, NSClass, int, int]]:
        """(r, class, default, override) for entries that change a default."""
        out = []
        for (r, c), s in sorted(self.overrides.items(), key=lambda kv: (kv[0][0], kv[0][1])):
            d = default_seed(c)
            if d is not None and d.count != s.count:
                out.append((r, c, d.count, s.count))
        return out

    @classmethod
    def from_entries(cls, entries) -> "SeedTable":
        if not isinstance(entries, list):
            raise SeedFileError("seed file must hold a JSON array")
        table: dict[tuple[int, NSClass], Seed] = {}
        for i, e in enumerate(entries):
            if not isinstance(e, dict) or not {"r", "class", "count"} <= set(e):
                raise SeedFileError(f"seed entry {i} needs r, class and count")
            r, text, count = e["r"], e["class"], e["count"]
            if not isinstance(r, int) or isinstance(r, bool):
                raise SeedFileError(f"seed entry {i}: r must be an integer")
            if not isinstance(count, str) or not count.isdigit():
                raise SeedFileError(f"seed entry {i}: count must be a nonnegative decimal string")
            try:
                c = normalize_sorted(parse_class(text, SurfaceModel(r)))
            except (ValueError, PreconditionError) as exc:
                raise SeedFileError(f"seed entry {i}: {exc}") from exc
            if not is_representable(c) or antik_degree(c) > 3:
                raise SeedFileError(f"seed entry {i}: {c} is not a representable class with -K.c <= 3")
            seed = Seed(int(count), str(e.get("note", "")))
            old = table.get((r, c))
            if old is not None and old.count != seed.count:
                raise SeedFileError(f"conflicting seed counts for r={r} class {c}")
            table[(r, c)] = seed
        return cls(table)

    @classmethod
    def load(cls, path: str) -> "SeedTable":
        try:
            with open(path, encoding="utf-8") as fh:
                raw = json.load(fh)
        except (OSError, json.JSONDecodeError) as exc:
            raise SeedFileError(f"cannot read seed file {path}: {exc}") from exc
        return cls.from_entries(raw)


DEFAULT_SEEDS = SeedTable()


# ------------------------------------------------------------ del Pezzo

def delpezzo_key(c: NSClass, seeds: SeedTable) -> CountKey:
    return CountKey.make("delpezzo", r=c.r, **{"class": str(normalize_sorted(c))},
                         seeds=seeds.fingerprint())


def delpezzo_terms(c: NSClass, seeds: SeedTable, cache: CountCache | None,
                   workers: int | None = None) -> list[BoundaryTerm]:
    """Marked boundary terms of the recursion, one per ordered decomposition."""
    k = antik_degree(c)
    pairs = enumerate_decompositions(c)

    def term(pair):
        c1, c2 = pair
        k1, k2 = antik_degree(c1), antik_degree(c2)
        w = (del_pezzo_count(c1, seeds, cache) * del_pezzo_count(c2, seeds, cache)
             * intersect(c1, c2))
        # c1 passes through k1 - 1 points, c2 through k2 - 1, n - 3 = k - 4 free
        return BoundaryTerm(1, k1, k2, binomial(k - 4, k1 - 2) * w, binomial(k - 4, k1 - 1) * w)

    return parallel_map(term, pairs, workers)


def del_pezzo_count(c: NSClass, seeds: SeedTable | None = None,
                    cache: CountCache | None = None, workers: int | None = None,
                    model: SurfaceModel | None = None) -> int:
    """N_c; ``workers`` > 1 evaluates the decomposition terms in threads."""
    if model is not None and model.r != c.r:
        raise ModelMismatchError(f"class has r={c.r}, model has r={model.r}")
    seeds = DEFAULT_SEEDS if seeds is None else seeds
    c = normalize_sorted(c)
    if not is_representable(c):
        raise NotRepresentableError(f"class {c} (r={c.r}) is not representable")

    def produce():
        if antik_degree(c) <= 3:
            s = seeds.lookup(c)
            if s is None:
                raise MissingSeedError(f"no seed for class {c} on r={c.r}")
            return s.count
        terms = delpezzo_terms(c, seeds, cache, workers)
        return theorem1_sum(SurfaceModel(c.r).k_squared, terms)

    return get_or_compute(cache, delpezzo_key(c, seeds), produce)


# ------------------------------------------------------------ the plane

def n_d(d: int, cache: CountCache | None = None) -> int:
    """Rational plane curves of degree d through 3d - 1 general points."""
    if d < 1:
        raise PreconditionError(f"degree must be positive, got {d}")

    def produce():
        if d == 1:
            return 1
        s = 0
        for d1 in range(1, d):
            d2 = d - d1
            s += (n_d(d1, cache) * n_d(d2, cache) * d1 * d1 * d2
                  * (d2 * binomial(3 * d - 4, 3 * d1 - 2) - d1 * binomial(3 * d - 4, 3 * d1 - 1)))
        return s

    return get_or_compute(cache, CountKey.make("nd", d=d), produce)


def c_d(d: int, cache: CountCache | None = None) -> int:
    """Rational degree-d curves through 3d - 2 points with a node on a fixed line."""
    if d < 1:
        raise PreconditionError(f"degree must be positive, got {d}")

    def produce():
        if d <= 2:
            return 0
        return theorem1_sum(1, c_d_terms(d, cache))

    return get_or_compute(cache, CountKey.make("cd", d=d), produce)


def c_d_terms(d: int, cache: CountCache | None = None) -> list[BoundaryTerm]:
    """Marked boundary terms for the node-on-a-line family, 3d - 5 free points.

    * The components meet on the line: one component goes through its
      points, the other through the rest and one of the first one's
      points on the line.  The smoothed node is one of the other
      d1 d2 - 1 intersection points.
    * Product type: one component already has its node on the line.
    """
    free = 3 * d - 5
    terms = []
    for d1 in range(1, d):
        d2 = d - d1
        n1, n2 = n_d(d1, cache), n_d(d2, cache)
        w = (d1 * d2 - 1) * n1 * n2
        places = [PlacedCount(w * d1, 1, 3 * d1 - 1), PlacedCount(w * d2, 2, 3 * d2 - 1)]
        places += [PlacedCount(c_d(d1, cache) * n2 * d1 * d2, 1, 3 * d1 - 2),
                   PlacedCount(c_d(d2, cache) * n1 * d1 * d2, 2, 3 * d2 - 2)]
        terms.append(BoundaryTerm(1, d1, d2, *placed_degrees(free, places)))
    return terms


def c_d_printed(d: int, cache: CountCache | None = None) -> int:
    """The node-on-a-line recursion exactly as published (3d^5 read as 3d - 5).

    Its first sum agrees with ``c_d_terms``.  In the second sum the
    marking with the plain component first uses the binomials of a
    component through 3d2 - 2 points instead of 3d2 - 1; from d = 4 on it
    disagrees with ``c_d`` (696 against 768).  Kept for comparison.
    """
    if d < 1:
        raise PreconditionError(f"degree must be positive, got {d}")
    if d <= 2:
        return 0
    return c_d_recursion(d, cache, c_d_printed)


def c_d_recursion(d: int, cache: CountCache | None = None, lower=None) -> int:
    """The printed two-sum formula at d, with lower node counts from ``lower``.

    First sum: the two components meet on the line.  Second sum: the
    first component already has its node on the line (product type).
    """
    lower = c_d_printed if lower is None else lower
    f = 3 * d - 5
    s = 0
    for d1 in range(1, d):
        d2 = d - d1
        first = ((binomial(f, 3 * d1 - 2) * d2 - binomial(f, 3 * d1 - 1) * d1) * d1 * d1
                 + (binomial(f, 3 * d2 - 2) * d1 * d2 - binomial(f, 3 * d2 - 3) * d1 * d1) * d2)
        s += first * (d1 * d2 - 1) * n_d(d1, cache) * n_d(d2, cache)
        second = ((binomial(f, 3 * d1 - 3) + binomial(f, 3 * d2 - 3)) * d1 * d2
                  - binomial(f, 3 * d1 - 2) * d1 * d1 - binomial(f, 3 * d2 - 2) * d2 * d2)
        s += second * d1 * d2 * lower(d1, cache) * n_d(d2, cache)
    return s


def b_d(d: int, cache: CountCache | None = None) -> int:
    """Rational degree-d curves through 3d - 2 points tangent to a fixed line."""

    def produce():
        v = 2 * (d - 1) * n_d(d, cache) - 2 * c_d(d, cache)
        if v < 0:
            raise NegativeCountError(f"B_{d} = {v} is negative")
        return v

    return get_or_compute(cache, CountKey.make("bd", d=d), produce)


def b_deg(d: int, e: int, g: int, cache: CountCache | None = None) -> int:
    """Tangencies with a fixed curve of degree e and geometric genus g."""
    if d < 1 or e < 1 or g < 0:
        raise PreconditionError(f"need d, e >= 1 and g >= 0, got ({d}, {e}, {g})")
    return get_or_compute(
        cache, CountKey.make("bdeg", d=d, e=e, g=g),
        lambda: 2 * (e - 1) * n_d(d, cache) + e * b_d(d, cache) + 2 * g * n_d(d, cache))


def n_d_genus1(d: int, cache: CountCache | None = None) -> int:
    """Degree-d curves of a fixed general genus-1 modulus through 3d points."""
    if d < 1:
        raise PreconditionError(f"degree must be positive, got {d}")
    return get_or_compute(cache, CountKey.make("ndg1", d=d),
                          lambda: (d - 1) * (d - 2) // 2 * n_d(d, cache))
