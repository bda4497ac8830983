"""Generic bend-and-break evaluator and the memo/persistence substrate.

A one-parameter degeneration argument relates the number of curves of an
n-dimensional family through n general points to data on the reducible
members of the family.  Each marked boundary component (a reducible member
together with an ordering of its two components) contributes

    ell * [(C1.L)(C2.L) d11 - (C1.L)^2 d02]

and the sum equals L^2 times the count.  ``theorem1_sum`` evaluates that
identity exactly; the count families elsewhere only build the terms.
"""

from __future__ import annotations

import json
import os
import tempfile
import threading
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from math import comb
from typing import Callable, Iterable, Sequence

from .errors import (
    CacheConflictError,
    CacheFileError,
    DivisibilityError,
    NegativeCountError,
    PreconditionError,
    UsageError,
)


def binomial(n: int, k: int) -> int:
    """C(n, k), and 0 whenever k < 0, k > n or n < 0."""
    if n < 0 or k < 0 or k > n:
        return 0
    return comb(n, k)


@dataclass(frozen=True)
class BoundaryTerm:
    """Contribution data of one marked boundary component."""

    ell: int
    c1L: int
    c2L: int
    d11: int
    d02: int

    def __post_init__(self):
        if self.ell < 1:
            raise PreconditionError(f"ell must be positive, got {self.ell}")
        if self.c1L < 0 or self.c2L < 0:
            raise PreconditionError("intersection degrees with L must be nonnegative")
        if self.d11 < 0 or self.d02 < 0:
            raise NegativeCountError(f"negative boundary degree in {self}")

    def weight(self) -> int:
        return self.ell * (self.c1L * self.c2L * self.d11 - self.c1L * self.c1L * self.d02)


def boundary_sum(terms: Iterable[BoundaryTerm]) -> int:
    """The undivided right-hand side of the degeneration identity."""
    return sum(t.weight() for t in terms)


def theorem1_sum(l_squared: int, terms: Iterable[BoundaryTerm]) -> int:
    if l_squared < 1:
        raise PreconditionError(f"L^2 must be positive, got {l_squared}")
    total = boundary_sum(terms)
    q, rem = divmod(total, l_squared)
    if rem:
        raise DivisibilityError(f"boundary sum {total} is not divisible by {l_squared}")
    if q < 0:
        raise NegativeCountError(f"boundary sum gives the negative count {q}")
    return q


def point_split_degrees(free: int, first_points: int, weight: int) -> tuple[int, int]:
    """(d11, d02) for a split where the first component needs ``first_points``.

    Two of the general points are distinguished.  ``free`` is the number of
    remaining points; the first component must pass through ``first_points``
    points in total and the second takes the rest.  d11 puts one
    distinguished point on each side, d02 puts both on the second side.
    ``weight`` is the number of configurations once the points are placed.
    """
    return (binomial(free, first_points - 1) * weight, binomial(free, first_points) * weight)


def product_type_degrees(n: int, n1: int, count1: int, count2: int, c1c2: int) -> tuple[int, int]:
    """Degrees of a product-type boundary with first family of dimension n1."""
    if n < 3:
        raise PreconditionError(f"the evaluator needs n >= 3, got {n}")
    if n1 < 1 or n - 1 - n1 < 0:
        raise PreconditionError(f"first family dimension {n1} out of range for n = {n}")
    return point_split_degrees(n - 1, n1, count1 * count2 * c1c2)


@dataclass(frozen=True)
class PlacedCount:
    """One boundary configuration family, before a marking is chosen.

    ``weight`` configurations exist once the general points are placed;
    ``component`` (1 or 2, in the marking's order) is the component that
    must pass through exactly ``points`` of them, the other one taking the
    rest.
    """

    weight: int
    component: int
    points: int


def placed_degrees(free: int, placements: Iterable[PlacedCount]) -> tuple[int, int]:
    """Sum (d11, d02) over placements, ``free`` points besides s1 and s2.

    d11 = s1 on the first component, s2 on the second.  d02 = both
    distinguished points on the second component.
    """
    d11 = d02 = 0
    for p in placements:
        if p.weight == 0:
            continue
        d11 += binomial(free, p.points - 1) * p.weight
        if p.component == 1:
            d02 += binomial(free, p.points) * p.weight
        else:
            d02 += binomial(free, p.points - 2) * p.weight
    return d11, d02


def parallel_map(fn: Callable, items: Sequence, workers: int | None = None) -> list:
    """Order-preserving map, threaded when ``workers`` > 1."""
    if not workers or workers <= 1 or len(items) < 2:
        return [fn(x) for x in items]
    with ThreadPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(fn, items))


# ---------------------------------------------------------------- memo keys

KINDS = ("nd", "delpezzo", "cd", "bd", "bdeg", "ndg1", "crossratio", "nodalcr", "ndg2")

_SEP = "|"


@dataclass(frozen=True)
class CountKey:
    """Canonical identifier of one count, printed as ``kind|name=value|...``."""

    kind: str
    params: tuple[tuple[str, str], ...] = ()

    def __post_init__(self):
        if self.kind not in KINDS:
            raise UsageError(f"unknown count kind {self.kind!r}")
        for name, value in self.params:
            if not name or any(ch in name for ch in "|=") or _SEP in value:
                raise UsageError(f"bad key parameter {name}={value}")

    @classmethod
    def make(cls, kind: str, **params) -> "CountKey":
        return cls(kind, tuple((k, str(v)) for k, v in params.items()))

    def __str__(self) -> str:
        return _SEP.join([self.kind] + [f"{k}={v}" for k, v in self.params])

    @classmethod
    def parse(cls, text: str) -> "CountKey":
        kind, *rest = text.split(_SEP)
        params = []
        for part in rest:
            name, eq, value = part.partition("=")
            if not eq:
                raise UsageError(f"malformed key component {part!r} in {text!r}")
            params.append((name, value))
        return cls(kind, tuple(params))


class CountCache:
    """Map from canonical keys to exact integers, with JSON persistence.

    A key is bound at most once.  Concurrent producers for the same key may
    both run; the first binding wins and a differing second value is an
    error, so a deterministic producer makes races harmless.
    """

    def __init__(self, values: dict[str, int] | None = None, path: str | None = None):
        self._values: dict[str, int] = dict(values or {})
        self._lock = threading.Lock()
        self.path = path

    def __len__(self):
        return len(self._values)

    def __contains__(self, key) -> bool:
        return str(key) in self._values

    def get(self, key, default=None):
        return self._values.get(str(key), default)

    def bind(self, key, value: int) -> int:
        k = str(key)
        with self._lock:
            old = self._values.get(k)
            if old is None:
                self._values[k] = value
                return value
        if old != value:
            raise CacheConflictError(f"key {k} already bound to {old}, refusing {value}")
        return old

    def items(self):
        return sorted(self._values.items())

    def to_json(self) -> str:
        payload = {k: str(v) for k, v in sorted(self._values.items())}
        return json.dumps(payload, indent=1, sort_keys=True) + "\n"

    def save(self, path: str | None = None) -> None:
        path = path or self.path
        if path is None:
            raise UsageError("no cache path given")
        text = self.to_json()
        folder = os.path.dirname(os.path.abspath(path))
        fd, tmp = tempfile.mkstemp(prefix=".cache-", suffix=".tmp", dir=folder)
        try:
            with os.fdopen(fd, "w", encoding="utf-8", newline="\n") as fh:
                fh.write(text)
            os.replace(tmp, path)
        except BaseException:
            if os.path.exists(tmp):
                os.unlink(tmp)
            raise

    @classmethod
    def load(cls, path: str) -> "CountCache":
        if not os.path.exists(path):
            return cls(path=path)
        try:
            with open(path, encoding="utf-8") as fh:
                raw = json.load(fh)
        except (OSError, json.JSONDecodeError) as exc:
            raise CacheFileError(f"cannot read cache {path}: {exc}") from exc
        if not isinstance(raw, dict):
            raise CacheFileError(f"cache {path} is not a JSON object")
        values = {}
        for k, v in raw.items():
            if not isinstance(v, str) or not v.lstrip("-").isdigit():
                raise CacheFileError(f"cache value for {k} is not a decimal string")
            try:
                CountKey.parse(k)
            except UsageError as exc:
                raise CacheFileError(str(exc)) from exc
            values[k] = int(v)
        return cls(values, path=path)


DEFAULT_CACHE = CountCache()


def resolve_cache(cache: CountCache | None) -> CountCache:
    return DEFAULT_CACHE if cache is None else cache


def get_or_compute(cache: CountCache | None, key: CountKey, producer: Callable[[], int]) -> int:
    cache = resolve_cache(cache)
    hit = cache.get(key)
    if hit is not None:
        return hit
    value = producer()
    return cache.bind(key, value)
