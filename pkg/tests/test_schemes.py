import itertools

import pytest

from nestsep import corpus, gf
from nestsep.bits import elements
from nestsep.connectivity import lam
from nestsep.classes import pi_table
from nestsep.errors import DimensionMismatch, NotExactSeparation, SizeGuard
from nestsep.schemes import (_assignments, compatible, compatible_pair, majic_check, realizable_schemes,
                             replay_witness)


@pytest.mark.parametrize("q,count", [(2, 10), (3, 15)])
def test_u24_scheme_counts(u24, q, count):
    found = realizable_schemes(u24, 0b0011, 3, q, witnesses=True)
    assert len(found) == count
    for s, w in found.items():
        assert replay_witness(u24, s, w)
        # class 0 is {∅}: its only flat is the empty one
        assert [F.dim for F in s(0)] == [0]


def test_witness_replay_detects_tampering(u24):
    found = realizable_schemes(u24, 0b0011, 3, 2, witnesses=True)
    schemes = list(found)
    a, b = schemes[0], schemes[1]
    assert not (replay_witness(u24, a, found[b]) and replay_witness(u24, b, found[a]))


def test_guards(u24):
    with pytest.raises(NotExactSeparation):
        realizable_schemes(u24, 0b0011, 2, 2)
    with pytest.raises(NotExactSeparation):
        realizable_schemes(u24, 0, 1, 2)
    with pytest.raises(SizeGuard):
        realizable_schemes(u24, 0b0011, 3, 5)
    big = corpus.uniform(3, 8)
    with pytest.raises(SizeGuard):
        realizable_schemes(big, 0b111111, 3, 2)


def test_compatible_dimension_mismatch(u24):
    s2 = next(iter(realizable_schemes(u24, 0b0011, 3, 2)))
    s3 = next(iter(realizable_schemes(u24, 0b0011, 3, 3)))
    with pytest.raises(DimensionMismatch):
        compatible(s2, s3, pi_table(u24, 0b0011))


def test_u24_majic(u24):
    assert compatible_pair(u24, 0b0011, 2) is None
    assert majic_check(u24, 0b0011, 2) is False
    assert compatible_pair(u24, 0b0011, 3) is not None
    assert majic_check(u24, 0b0011, 3) is True


@pytest.mark.parametrize("name,side,q,expect", [
    ("F7", ["1", "2", "12"], 2, True),
    ("F7", ["1", "2", "12"], 3, False),
    ("F7-", ["e0", "e1", "e3"], 2, False),
    ("F7-", ["e0", "e1", "e3"], 3, True),
    # five points do not fit on a line of PG(2, 3)
    ("U25", ["a", "b"], 3, False),
    ("U25", ["a", "b"], 2, False),
])
def test_majic_named(name, side, q, expect):
    M = corpus.named(name)
    assert majic_check(M, M.mask(side), q) is expect


def slow_assignments(M, A, k, q):
    """Reference search: recompute every rank from scratch with gf.rank_of."""
    f = gf.field_create(q)
    items = elements(A)
    s, nN = len(items), k - 1
    ranks = M.restrict(A).local_table()
    out = set()

    def go(i, p, vecs):
        if i == s:
            out.add((tuple(vecs), p))
            return
        opts = []
        if p < s:
            unit = [0] * (nN + s)
            unit[nN + p] = 1
            opts.append((tuple(unit), p + 1))
        for head in itertools.product(range(q), repeat=nN + p):
            v = tuple(head) + (0,) * (s - p)
            if gf.normalize(v, f) == v:
                opts.append((v, p))
        for v, np_ in opts:
            new = vecs + [v]
            if all(gf.rank_of([new[b] for b in range(i + 1) if j >> b & 1], f) == ranks[j]
                   for j in range(1 << i, 1 << (i + 1))):
                go(i + 1, np_, new)

    go(0, 0, [])
    return out


@pytest.mark.parametrize("name,side,k", [("U24", ["a", "b"], 3), ("U24", ["a"], 2),
                                         ("F7", ["1", "2", "12"], 3), ("M(K4)", None, 3),
                                         ("U35", ["a", "b"], 3)])
@pytest.mark.parametrize("q", [2, 3])
def test_search_matches_reference(name, side, k, q):
    M = corpus.named(name)
    A = M.mask(side) if side else M.mask(M.labels[:3])
    if lam(M, A) != k - 1:
        pytest.skip("not exact")
    fast = {(tuple(v), p) for v, p in _assignments(M, A, k, gf.field_create(q))}
    assert fast == slow_assignments(M, A, k, q)


@pytest.mark.parametrize("name,side", [("U24", ["a", "b"]), ("F7", ["1", "2", "12"]),
                                       ("M(K4)", None), ("U35", ["a", "b"])])
@pytest.mark.parametrize("q", [2, 3])
def test_pair_search_matches_nested_loop(name, side, q):
    M = corpus.named(name)
    A = M.mask(side) if side else M.mask(M.labels[:3])
    k = lam(M, A) + 1
    key = lambda s: str(s.encode())
    S1 = sorted(realizable_schemes(M, A, k, q), key=key)
    S2 = sorted(realizable_schemes(M, M.ground & ~A, k, q), key=key)
    pi = pi_table(M, A)
    first = next(((a, b) for a in S1 for b in S2 if compatible(a, b, pi)), None)
    assert compatible_pair(M, A, q) == first
