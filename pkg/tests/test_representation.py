import itertools

import numpy as np
import pytest

from nestsep import catalogue, corpus
from nestsep.errors import HypothesisFail, SizeGuard
from nestsep.matroid import LinearMatroid
from nestsep.representation import (clear_cache, is_excluded_minor, is_representable,
                                    lemma_2seps_check, max_nested_kseps, nested_bound,
                                    theorem_report)


def representable_brute(M, q):
    """Try every full-rank r x n matrix over the prime field GF(q)."""
    r, n = M.full_rank, M.size
    target = M.local_table()
    if r == 0:
        return True
    for entries in itertools.product(range(q), repeat=r * n):
        rows = np.array(entries).reshape(r, n).tolist()
        if np.array_equal(LinearMatroid.from_rows(rows, q).table(), target):
            return True
    return False


@pytest.mark.parametrize("n", [2, 3, 4])
@pytest.mark.parametrize("q", [2, 3])
def test_search_agrees_with_brute(n, q):
    for M in catalogue.matroids(n):
        if q ** (M.full_rank * n) > 20000:
            continue
        w = is_representable(M, q)
        assert (w is not None) == representable_brute(M, q)
        if w is not None:
            assert w.reproduces(M)


@pytest.mark.parametrize("name,row", [
    # GF(2), GF(3), GF(4), GF(5)
    ("U24", [False, True, True, True]),
    ("U25", [False, False, True, True]),
    ("U36", [False, False, True, True]),
    ("F7", [True, False, True, False]),
    ("F7*", [True, False, True, False]),
    ("F7-", [False, True, False, True]),
    ("M(K4)", [True, True, True, True]),
])
def test_named_representability(name, row):
    M = corpus.named(name)
    assert [is_representable(M, q) is not None for q in (2, 3, 4, 5)] == row


def test_cache_is_transparent(u24):
    clear_cache()
    a = is_representable(u24, 3)
    b = is_representable(u24, 3)
    assert a is b and a.reproduces(u24)


def test_size_guard():
    with pytest.raises(SizeGuard):
        is_representable(corpus.uniform(2, 11), 2)


def test_excluded_minors():
    assert is_excluded_minor(corpus.u24(), [2])
    assert is_excluded_minor(corpus.fano(), [3])
    assert not is_excluded_minor(corpus.fano(), [2])
    assert is_excluded_minor(corpus.fano_dual(), [3])
    # U25 has U24 as a proper minor, which is already not binary
    assert not is_excluded_minor(corpus.named("U25"), [2])
    assert is_excluded_minor(corpus.named("U25"), [3])


def test_nested_counts():
    assert [max_nested_kseps(corpus.u24(), k) for k in (1, 2, 3)] == [0, 2, 3]
    assert [max_nested_kseps(corpus.fano(), k) for k in (1, 2, 3)] == [0, 2, 5]


def test_2seps_lemma():
    assert lemma_2seps_check(corpus.u24(), [2])
    assert lemma_2seps_check(corpus.fano(), [3])
    with pytest.raises(HypothesisFail):
        lemma_2seps_check(corpus.fano(), [2])


def test_report_u24():
    rows = theorem_report(corpus.u24(), [2])
    assert [r["count"] for r in rows] == [0, 2, 3]
    assert [r["tower_args"] for r in rows] == [[2, 3, 2, 4], [2, 4, 3, 4], [2, 5, 4, 4]]
    assert all(r["below"] for r in rows)
    assert rows[0]["tower"] == "2^43046721"
    factor, t = nested_bound([2, 3], 2)
    assert factor == 8 and t.args == (3, 5, 3, 4)
