import itertools
import math

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from nestsep import gf
from nestsep.errors import AmbientMismatch, SizeGuard
from nestsep.geometry import (Tower, count_flats, empty_flat, enumerate_flats, flat_local_conn,
                              flats_bound_holds, full_flat, gaussian_binomial, intersect,
                              projective_points, span_flat, tower, ProjectiveGeometry)


def test_small_towers():
    assert tower(2, 3, 2) == 512
    assert tower(2, 2, 2, 2) == 65536
    assert tower(3, 3) == 27
    assert tower(5) == 5
    assert tower(7, 0) == 1 and tower(0, 0) == 1
    assert tower(2, 3, 1) == 8


def test_huge_tower_exact_form():
    t = Tower(2, 5, 4, 4)
    assert t.huge and t.value is None
    assert str(t) == f"2^{5 ** 256}"
    assert t > 10 ** 1000
    expect = 256 * math.log10(5) + math.log10(math.log10(2))
    assert math.log10(t.digits()) == pytest.approx(expect)


def test_tower_comparisons_exact():
    t = Tower(2, 2, 2)
    assert t == 16 and t > 15 and not t > 16
    assert Tower(3, 3, 3) > 10 ** 12  # 3^27
    assert not Tower(3, 3, 3) > 3 ** 27


def test_tower_rejects_bad_args():
    with pytest.raises(ValueError):
        Tower()
    with pytest.raises(ValueError):
        Tower(2, -1)


@pytest.mark.parametrize("n,r,q,val", [(3, 1, 2, 7), (4, 2, 2, 35), (4, 2, 3, 130), (5, 2, 4, 5797)])
def test_gaussian_binomial(n, r, q, val):
    assert gaussian_binomial(n, r, q) == val


def test_flat_counts_frozen():
    assert [count_flats(k, 2) for k in range(1, 6)] == [2, 5, 16, 67, 374]
    assert [count_flats(k, 3) for k in range(1, 5)] == [2, 6, 28, 212]


@pytest.mark.parametrize("k,q", [(1, 2), (2, 3), (3, 2), (3, 3), (4, 2), (2, 4), (3, 4), (2, 9)])
def test_enumeration_against_span_closure(k, q):
    # oracle: every subspace is the span of some set of at most k projective points
    pts = projective_points(k, q)
    seen = {span_flat(list(c), q, k) for r in range(k + 1) for c in itertools.combinations(pts, r)}
    flats = enumerate_flats(k, q)
    assert len(flats) == len(set(flats)) == count_flats(k, q)
    assert set(flats) == seen


def test_enumeration_guard():
    with pytest.raises(SizeGuard):
        enumerate_flats(12, 7)


@settings(max_examples=50, deadline=None)
@given(st.sampled_from([2, 3, 4, 5]), st.integers(1, 4), st.data())
def test_meet_join_dimensions(q, k, data):
    vec = st.lists(st.integers(0, q - 1), min_size=k, max_size=k)
    U = span_flat(data.draw(st.lists(vec, max_size=k)), q, k)
    W = span_flat(data.draw(st.lists(vec, max_size=k)), q, k)
    I = intersect(U, W)
    assert U.dim + W.dim == U.join(W).dim + I.dim
    assert flat_local_conn(U, W) == I.dim
    for r in I.rows:
        assert U.contains_vector(r) and W.contains_vector(r)


def test_flat_points():
    F = full_flat(2, 3)
    assert len(F.points()) == 7 and empty_flat(2, 3).points() == []
    assert len(span_flat([(1, 0, 0), (0, 1, 0)], 3, 3).points()) == 4


def test_ambient_mismatch():
    with pytest.raises(AmbientMismatch):
        intersect(full_flat(2, 3), full_flat(3, 3))


def test_fano_is_pg22():
    M = ProjectiveGeometry(3, 2).matroid()
    assert M.size == 7 and M.full_rank == 3


@pytest.mark.parametrize("k,q", [(1, 2), (2, 2), (3, 2), (4, 3), (5, 5), (8, 4), (16, 2)])
def test_flats_bound(k, q):
    assert flats_bound_holds(k, q)
