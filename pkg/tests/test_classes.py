import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from nestsep import catalogue, corpus
from nestsep.bits import popcount, submasks
from nestsep.classes import (classes1_bound, classes2_check, classes2_counterexample,
                             classes2_refined_check, equivalent, equivalent_literal,
                             guts_flat, guts_fingerprint, link_context, partition, pi_table,
                             stable_contained_dissection)
from nestsep.connectivity import lam, local_conn
from nestsep.dissection import validate
from nestsep.errors import HypothesisFail
from nestsep.matroid import LinearMatroid


def test_u24_partition(u24):
    P = partition(u24, 0b0011)
    assert P.count == 3
    assert P.as_dict(u24) == {0: [[]], 1: [["a"], ["b"]], 2: [["a", "b"]]}
    assert P.class_of(0b0001) == P.class_of(0b0010) == 1


def test_u24_pi(u24):
    pi = pi_table(u24, 0b0011)
    assert pi.values.tolist() == [[0, 0, 0], [0, 0, 1], [0, 1, 2]]
    assert pi.transpose().values.tolist() == pi.values.T.tolist()


def test_fano_triangle_classes(fano):
    # a line: ∅, its three points, then every pair spans the whole line
    assert partition(fano, fano.mask(["1", "2", "12"])).count == 5
    # a basis: the complement spans everything, so all 8 subsets differ
    assert partition(fano, fano.mask(["1", "2", "3"])).count == 8


@settings(max_examples=40, deadline=None)
@given(st.integers(0, 2 ** 32 - 1))
def test_fingerprint_equivalence_is_literal(seed):
    rng = np.random.default_rng(seed)
    n = int(rng.integers(2, 8))
    M = corpus.random_linear(rng, int(rng.choice([2, 3])), int(rng.integers(1, 4)), n)
    A = int(rng.integers(1, 1 << n))
    subs = submasks(A)
    X, Y = (subs[int(i)] for i in rng.integers(0, len(subs), 2))
    assert equivalent(M, A, X, Y) == equivalent_literal(M, A, X, Y)
    P = partition(M, A)
    assert (P.class_of(X) == P.class_of(Y)) == equivalent(M, A, X, Y)


@pytest.mark.parametrize("q", [2, 3])
def test_classes1_on_uniform_lines(q):
    M = corpus.uniform_linear(2, q + 1, q)
    for A in range(1, M.ground):
        k = lam(M, A) + 1
        if k >= 2:
            assert classes1_bound(M, A, k)


def test_classes1_hypotheses(u24):
    with pytest.raises(HypothesisFail):
        classes1_bound(u24, 0b0011, 3)
    M = LinearMatroid.from_rows([[0, 1, 1]], 2)
    with pytest.raises(HypothesisFail):
        classes1_bound(M, 0b001, 2)


def test_guts_fingerprint_implies_equivalence(fano):
    A = fano.mask(["1", "2", "12"])
    assert guts_flat(fano, A).dim == 2
    for X in submasks(A):
        for Y in submasks(A):
            if guts_fingerprint(fano, A, X) == guts_fingerprint(fano, A, Y):
                assert equivalent(fano, A, X, Y)


def test_classes2_parallel_pair_counterexample():
    # two parallel elements: the only statement that holds needs the extra e ∈ cl(X) split
    M = LinearMatroid.from_rows([[1, 1]], 2)
    cx = classes2_counterexample(M, 0b01, 1)
    assert cx is not None and not classes2_check(M, 0b01, 1)
    assert classes2_refined_check(M, 0b01, 1)


@pytest.mark.parametrize("n", [3, 4, 5])
def test_classes2_refined_always(n):
    for M in catalogue.matroids(n):
        for A in range(1, M.ground):
            for e in range(n):
                if not A >> e & 1:
                    assert classes2_refined_check(M, A, e)


def test_stable_contained_path():
    M = corpus.path_graph(6)
    D = validate(M, [1 << i for i in range(M.n)], 0)
    ctx = link_context(M, D)
    assert local_conn(M.contract(ctx.C), D.parts[0], D.parts[-1]) == 0
    B = stable_contained_dissection(M, D, ctx, 2)
    assert B is not None and B.length == 2
