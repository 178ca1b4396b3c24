import itertools

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from conftest import rank_mod_p
from nestsep import catalogue, corpus
from nestsep.bits import popcount
from nestsep.errors import InvalidRegion, ValidationError
from nestsep.matroid import (BasisMatroid, GraphicMatroid, LinearMatroid, UniformMatroid,
                             has_minor, is_isomorphic)


def axioms_hold(M):
    t = M.table()
    g = M.ground
    subs = [X for X in range(1 << M.n) if X & ~g == 0]
    for X in subs:
        if not 0 <= t[X] <= popcount(X):
            return False
        for i in range(M.n):
            if g >> i & 1 and not X >> i & 1 and not t[X] <= t[X | 1 << i] <= t[X] + 1:
                return False
    return True


@st.composite
def linear_matrices(draw, max_n=7):
    p = draw(st.sampled_from([2, 3]))
    r = draw(st.integers(1, 3))
    n = draw(st.integers(1, max_n))
    rows = draw(st.lists(st.lists(st.integers(0, p - 1), min_size=n, max_size=n),
                         min_size=r, max_size=r))
    return p, rows


@settings(max_examples=50, deadline=None)
@given(linear_matrices())
def test_linear_rank_matches_oracle(pm):
    p, rows = pm
    M = LinearMatroid.from_rows(rows, p)
    cols = [tuple(r[j] for r in rows) for j in range(M.n)]
    for X in range(1 << M.n):
        assert M.rank(X) == rank_mod_p([cols[j] for j in range(M.n) if X >> j & 1], p)
    assert axioms_hold(M)


@settings(max_examples=40, deadline=None)
@given(linear_matrices(max_n=6), st.data())
def test_minor_and_dual_ranks(pm, data):
    p, rows = pm
    M = LinearMatroid.from_rows(rows, p)
    C = data.draw(st.integers(0, M.ground))
    D = data.draw(st.integers(0, M.ground)) & ~C
    N = M.minor(C, D)
    for X in range(1 << M.n):
        if X & (C | D):
            continue
        assert N.rank(X) == M.rank(X | C) - M.rank(C)
        assert M.dual().rank(X) == popcount(X) + M.rank(M.ground & ~X) - M.full_rank
    assert axioms_hold(N) and axioms_hold(M.dual())
    # (M/C)* = M* \ C
    assert M.contract(C).dual().same_oracle(M.dual().delete(C))


def test_uniform_ranks():
    M = UniformMatroid(2, 5)
    assert [M.rank((1 << k) - 1) for k in range(6)] == [0, 1, 2, 2, 2, 2]
    assert len(list(M.bases())) == 10


def test_graphic_k4():
    M = corpus.mk4()
    assert (M.size, M.full_rank) == (6, 3)
    # four triangles plus three 4-cycles as circuits: 16 spanning trees
    assert len(list(M.bases())) == 16


def test_bases_exchange_rejected():
    with pytest.raises(ValidationError):
        BasisMatroid(4, [0b0011, 0b1100])


def test_minor_region_errors(u24):
    with pytest.raises(InvalidRegion):
        u24.minor(1, 1)
    with pytest.raises(InvalidRegion):
        u24.contract(1 << 7)


def test_closure_and_parallel():
    M = LinearMatroid.from_rows([[1, 1, 0], [0, 0, 1]], 2)
    assert M.closure(0b001) == 0b011
    assert M.parallel_classes() and not M.is_simple()


def test_fano_and_duals(fano):
    assert fano.size == 7 and fano.full_rank == 3
    assert sum(1 for _ in fano.bases()) == 28
    assert is_isomorphic(fano.dual(), corpus.fano_dual())
    assert not is_isomorphic(fano, corpus.non_fano())


def test_minors():
    assert has_minor(corpus.uniform(3, 6), corpus.u24())
    assert not has_minor(corpus.fano(), corpus.u24())
    assert has_minor(corpus.non_fano(), corpus.u24())


def test_catalogue_counts():
    # number of non-isomorphic matroids on n elements, n = 0..8
    assert [len(catalogue.tables(n)) for n in range(9)] == [1, 2, 4, 8, 17, 38, 98, 306, 1724]


def test_catalogue_entries_are_matroids():
    for n in range(6):
        for M in catalogue.matroids(n):
            assert axioms_hold(M)


@pytest.mark.parametrize("n", [3, 4, 5])
def test_fast_extensions_agree_with_modular_cuts(n):
    for t in catalogue.tables(n):
        fast = {tuple(x) for x in catalogue.extensions(t, n)}
        slow = {tuple(catalogue.extend(t, n, c)) for c in catalogue.modular_cuts(t, n)}
        assert fast == slow


def test_catalogue_pairwise_non_isomorphic():
    ms = list(catalogue.matroids(5))
    for a, b in itertools.combinations(ms, 2):
        assert not is_isomorphic(a, b)


def test_graphic_labels():
    M = GraphicMatroid([("a", "b"), ("b", "c"), ("a", "c")], ["x", "y", "z"])
    assert M.names(M.ground) == ["x", "y", "z"]
    assert M.rank(M.mask(["x", "y"])) == 2 and M.full_rank == 2
    assert np.array_equal(M.local_table(), UniformMatroid(2, 3).table())
