import json
import time
from math import comb
from pathlib import Path

import pytest

from bendbreak.engine import BoundaryTerm, CountCache, boundary_sum
from bendbreak.errors import PreconditionError
from bendbreak.genus2 import (
    NODAL_PATTERNS,
    Genus2BoundaryTerm,
    genus2_terms,
    n_d_genus2,
    nodal_cr_dual,
    nodal_cr_fixed,
    nodal_labelled,
    node_count,
    z1_degrees,
    z2_degrees,
)
from bendbreak.plane_counts import n_d
from oracles import nodal_dual_count

LOCK = json.loads((Path(__file__).parent / "data" / "regression_lock.json").read_text())


def test_nodal_counts_vanish_below_three():
    for d in (1, 2):
        for e in range(1, 5):
            assert nodal_cr_fixed(d, e) == 0
            assert nodal_cr_dual(d, e) == 0
        for pattern in NODAL_PATTERNS:
            assert nodal_labelled(d, pattern) == 0


def test_node_count():
    assert [node_count(d) for d in range(1, 6)] == [0, 0, 1, 3, 6]


@pytest.mark.parametrize("d", [3, 4])
def test_nodal_dual_against_direct_solve(d):
    # the oracle builds one node; a general rational curve has node_count(d) of them
    assert nodal_cr_dual(d, 1) == node_count(d) * nodal_dual_count(d, 1)


def test_nodal_counts_nonnegative_and_locked():
    for d in range(1, 6):
        fixed = [nodal_cr_fixed(d, e) for e in range(1, 5)]
        dual = [nodal_cr_dual(d, e) for e in range(1, 5)]
        assert min(fixed + dual) >= 0
        assert [str(v) for v in fixed] == LOCK[f"nodal_fixed|d={d}"]
        assert [str(v) for v in dual] == LOCK[f"nodal_dual|d={d}"]
    for pattern in NODAL_PATTERNS:
        assert [str(nodal_labelled(d, pattern)) for d in range(1, 7)] == LOCK[f"nodal_labelled|{pattern}"]


def test_nodal_fixed_follows_multilinearity():
    for d in range(1, 6):
        x, y = nodal_labelled(d, "(1)"), nodal_labelled(d, "1,1")
        for e in range(1, 5):
            assert 2 * nodal_cr_fixed(d, e) == e * x + e * (e - 1) * y


@pytest.mark.xfail(strict=True, reason="a pair on a degree-e curve has e one-line and e(e-1) "
                                       "two-line configurations, so the count is quadratic in e")
def test_nodal_fixed_linear_in_e():
    for d in range(1, 5):
        for e in range(1, 5):
            assert nodal_cr_fixed(d, e) == e * nodal_cr_fixed(d, 1)


def test_nodal_errors():
    with pytest.raises(PreconditionError):
        nodal_labelled(3, "2")
    with pytest.raises(PreconditionError):
        nodal_cr_fixed(0, 1)
    with pytest.raises(PreconditionError):
        nodal_cr_dual(3, 0)


# -------------------------------------------------------------- boundary

def test_z2_examples():
    assert z2_degrees(4, 1, 3)[0] == 840
    assert z2_degrees(4, 3, 1)[0] == 840
    assert z2_degrees(4, 2, 2)[0] == 5040
    assert z2_degrees(3, 1, 2) == (0, 0)
    assert z2_degrees(3, 2, 1) == (0, 0)


def test_z1_small_components_vanish():
    for d1 in (1, 2):
        for d2 in (1, 2):
            assert z1_degrees(d1 + d2, d1, d2)[0] == 0


def test_z1_three_plus_one():
    expected = (comb(10, 1) * n_d(1) * nodal_cr_fixed(3, 1)
                + comb(10, 7) * n_d(3) * nodal_cr_dual(3, 1))
    assert z1_degrees(4, 3, 1)[0] == expected
    assert z1_degrees(4, 1, 3)[0] == expected


def test_z1_z2_degrees_symmetric_under_swap():
    for d in range(2, 9):
        for d1 in range(1, d):
            d2 = d - d1
            assert z1_degrees(d, d1, d2)[0] == z1_degrees(d, d2, d1)[0]
            assert z2_degrees(d, d1, d2)[0] == z2_degrees(d, d2, d1)[0]


def test_marking_swap_invariance():
    for d in range(4, 8):
        terms = genus2_terms(d)
        relabelled = [Genus2BoundaryTerm(t.kind, t.d2, t.d1,
                                         *(z1_degrees if t.kind == "Z1" else z2_degrees)(d, t.d2, t.d1))
                      for t in terms]
        assert (boundary_sum(t.as_boundary_term() for t in terms)
                == boundary_sum(t.as_boundary_term() for t in relabelled))


def test_boundary_terms_shape():
    for d in range(2, 8):
        for t in genus2_terms(d):
            assert t.d11 >= 0 and t.d02 >= 0
            assert t.ell == (2 if t.kind == "Z2" else 1)
            assert isinstance(t.as_boundary_term(), BoundaryTerm)
            if t.kind == "Z2":
                assert t.d1 * t.d2 > 2 or (t.d11, t.d02) == (0, 0)


def test_bad_splits():
    with pytest.raises(PreconditionError):
        z1_degrees(4, 1, 2)
    with pytest.raises(PreconditionError):
        z2_degrees(4, 0, 4)


# --------------------------------------------------------------- assembly

def test_genus2_vanishes_for_small_degree():
    assert [n_d_genus2(d) for d in (1, 2, 3)] == [0, 0, 0]


def test_genus2_pipeline():
    start = time.perf_counter()
    cache = CountCache()
    values = [n_d_genus2(d, cache) for d in range(1, 7)]
    assert time.perf_counter() - start < 60
    assert all(isinstance(v, int) and v >= 0 for v in values)
    assert [str(v) for v in values] == LOCK["genus2"]


def test_genus2_precondition():
    with pytest.raises(PreconditionError):
        n_d_genus2(0)
