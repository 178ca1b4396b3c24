"""Exact GF(q)-representability by backtracking, excluded minors, nested separations."""

import threading
from dataclasses import dataclass
from itertools import combinations

import numpy as np

from . import gf
from .bits import elements, mask_of
from .dissection import find_longest_dissection
from .errors import HypothesisFail, guard
from .geometry import Tower
from .matroid import LinearMatroid


def _size_limit(q):
    return 10 if q <= 3 else 8


@dataclass(frozen=True)
class ReprWitness:
    """A matrix whose i-th column represents the i-th ground element of M."""

    matrix: gf.Matrix
    ground: tuple

    def matroid(self, labels=None):
        return LinearMatroid(self.matrix, labels)

    def reproduces(self, M):
        if self.matrix.ncols == 0:
            return M.size == 0
        return bool(np.array_equal(self.matroid().table(), M.local_table()))


_cache = {}
_cache_lock = threading.Lock()


def _key(M, q):
    return (M.size, M.local_table().tobytes(), q)


def is_representable(M, field, check=True):
    """A ReprWitness over ``field`` (a GF or an order q), or None if none exists.

    A lexicographically first basis is pinned to the identity, every other
    column is supported on its fundamental circuit, and entries on a
    spanning forest of the support graph are scaled to 1.  The remaining
    entries are searched column by column, pruning as soon as some r-subset
    of the assigned columns disagrees with M about being a basis.
    """
    f = field if isinstance(field, gf.GF) else gf.field_create(field)
    guard(f"is_representable over GF({f.q})", M.size, _size_limit(f.q))
    key = _key(M, f.q)
    with _cache_lock:
        if key in _cache:
            return _cache[key]
    w = _search(M, f)
    if w is not None and check:
        assert w.reproduces(M), "representation does not reproduce the rank oracle"
    with _cache_lock:
        _cache[key] = w
    return w


def clear_cache():
    with _cache_lock:
        _cache.clear()


def _search(M, f):
    E = elements(M.ground)
    m = len(E)
    r = M.full_rank
    pos = {e: i for i, e in enumerate(E)}
    if r == 0:
        return ReprWitness(gf.Matrix((), f, m), tuple(E))
    B0 = elements(M.basis())
    brow = {e: i for i, e in enumerate(B0)}
    Bmask = mask_of(B0)
    others = [e for e in E if e not in brow]
    support = {}
    for e in others:
        support[e] = [i for i, b in enumerate(B0)
                      if M.rank((Bmask & ~(1 << b)) | 1 << e) == r]
    # spanning forest of the bipartite support graph, rows vs. columns
    parent = {}

    def find(x):
        while parent.get(x, x) != x:
            x = parent[x]
        return x

    fixed = set()
    for e in others:
        for i in support[e]:
            a, b = find(("row", i)), find(("col", e))
            if a != b:
                parent[a] = b
                fixed.add((i, e))
    bases = set(M.bases())
    cols = {b: tuple(int(i == brow[b]) for i in range(r)) for b in B0}
    checks = {}
    done = list(B0)
    for e in others:
        checks[e] = [tuple(S) for S in combinations(done, r - 1)]
        done.append(e)

    def consistent(e):
        v = cols[e]
        for S in checks[e]:
            is_basis = (mask_of(S) | 1 << e) in bases
            indep = gf.rank_of([cols[s] for s in S] + [v], f) == r
            if is_basis != indep:
                return False
        return True

    def go(j):
        if j == len(others):
            return True
        e = others[j]
        sup = support[e]
        free = [i for i in sup if (i, e) not in fixed]
        for vals in _nonzero_tuples(f, len(free)):
            v = [0] * r
            for i in sup:
                v[i] = 1
            for i, x in zip(free, vals):
                v[i] = x
            cols[e] = tuple(v)
            if consistent(e) and go(j + 1):
                return True
        del cols[e]
        return False

    if not go(0):
        return None
    rows = [[cols[e][i] for e in E] for i in range(r)]
    return ReprWitness(gf.Matrix.from_rows(rows, f), tuple(E))


def _nonzero_tuples(f, n):
    if n == 0:
        yield ()
        return
    for head in f.nonzero():
        for tail in _nonzero_tuples(f, n - 1):
            yield (head,) + tail


def _fields(fam):
    out = []
    for x in fam:
        out.append(x if isinstance(x, gf.GF) else gf.field_create(x))
    if not out or len({f.q for f in out}) != len(out):
        raise ValueError("a field family is a nonempty list of distinct orders")
    return out


def is_family_representable(M, fam):
    return any(is_representable(M, f) is not None for f in _fields(fam))


def is_excluded_minor(M, fam):
    """Not representable over any field in fam, but every single-element minor is."""
    fs = _fields(fam)
    if is_family_representable(M, fs):
        return False
    for e in elements(M.ground):
        b = 1 << e
        if not is_family_representable(M.delete(b), fs):
            return False
        if not is_family_representable(M.contract(b), fs):
            return False
    return True


def max_nested_kseps(M, k):
    """Largest n such that M has n nested k-separations."""
    if k < 1:
        raise ValueError("k must be positive")
    return find_longest_dissection(M, k - 1).length


def lemma_2seps_check(M, fam):
    fs = _fields(fam)
    if not is_excluded_minor(M, fs):
        raise HypothesisFail("not an excluded minor for the family")
    return max_nested_kseps(M, 2) <= len(fs) + 1


def nested_bound(fam, k):
    """|F|^(k+1) * tower(q, q+k, k+1, 4) with q the largest order in the family."""
    fs = _fields(fam)
    q = max(f.q for f in fs)
    return len(fs) ** (k + 1), Tower(q, q + k, k + 1, 4)


def theorem_report(M, fam, ks=(1, 2, 3)):
    """Compare each nested-k-separation count of M with the tower bound."""
    rows = []
    for k in ks:
        count = max_nested_kseps(M, k)
        factor, t = nested_bound(fam, k)
        # factor >= 1, so t > count already settles factor * t > count
        below = t > count
        rows.append({"k": k, "count": count, "factor": factor, "tower": str(t),
                     "tower_args": list(t.args), "below": bool(below)})
    return rows
