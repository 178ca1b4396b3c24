"""Schemes: assignments of guts flats to the classes of P(M, A).

N = PG(k-2, q) is fixed as the coordinate subspace spanned by the first k-1
coordinates.  An extension M' of M|A by N is searched up to the linear maps
that fix N pointwise: the elements of A whose images in V/N are new are pinned
to unit vectors outside N, every other element is a normalized vector in N
plus the span of the pinned ones.  Each witness gives the scheme
P -> {span(X) ∩ N : X ∈ P}.
"""

import threading
from dataclasses import dataclass
from functools import lru_cache
from itertools import product

import numpy as np

from . import gf
from .bits import elements, popcount, submask_array
from .classes import partition, pi_table
from .connectivity import lam
from .errors import DimensionMismatch, DisagreementBug, NotExactSeparation, SizeGuard
from .geometry import Flat, enumerate_flats, flat_local_conn, projective_points, span_flat
from .matroid import LinearMatroid
from .representation import is_representable

SIDE_LIMIT = 5
Q_LIMIT = 3
K_LIMIT = 3


@dataclass(frozen=True)
class Scheme:
    """``assignment[c]`` is the frozenset of flats given to class c of P(M, side)."""

    side: int
    k: int
    q: int
    assignment: tuple

    def __call__(self, c):
        return self.assignment[c]

    def encode(self):
        return {c: sorted(F.encode() for F in flats) for c, flats in enumerate(self.assignment)}


@dataclass(frozen=True)
class RealizabilityWitness:
    """Columns: the elements of the side (in id order), then the points of N."""

    matrix: gf.Matrix
    side: tuple
    dim: int

    def matroid(self):
        return LinearMatroid(self.matrix)


def _check_guards(M, A, k, q):
    if popcount(A) > SIDE_LIMIT:
        raise SizeGuard(f"side of size {popcount(A)} exceeds {SIDE_LIMIT}")
    if q > Q_LIMIT:
        raise SizeGuard(f"q = {q} exceeds {Q_LIMIT}")
    if k > K_LIMIT:
        raise SizeGuard(f"k = {k} exceeds {K_LIMIT}")
    g = M.ground
    if A == 0 or A == g or lam(M, A) != k - 1:
        raise NotExactSeparation(f"(A, E-A) is not an exact {k}-separation")


@lru_cache(maxsize=None)
def _space(q, w):
    """All vectors of GF(q)^w (q prime), indexed big-endian so index order is product order."""
    D = np.array(list(product(range(q), repeat=w)), dtype=np.int64).reshape(-1, w)
    pw = q ** np.arange(w - 1, -1, -1, dtype=np.int64)
    return D, pw


@lru_cache(maxsize=1 << 14)
def _shift(q, w, vi, c):
    """Index of x - c*v for every x, with v the vector at index vi."""
    D, pw = _space(q, w)
    return ((D - c * D[vi]) % q) @ pw


def _assignments(M, A, k, f):
    """Yield (vectors, pivots) for every canonical extension of M|A by N.

    Vectors have k-1 coordinates for N followed by one per possible pivot.
    The span of every subset of the elements placed so far is kept as a
    boolean row over the whole space, so a candidate fits iff its membership
    in those spans matches where M|A says the rank stays put.
    """
    q = f.q
    if f.m != 1:
        raise SizeGuard("scheme search needs a prime field")
    s = popcount(A)
    nN = k - 1
    w = nN + s
    ranks = M.restrict(A).local_table()
    D, pw = _space(q, w)
    # stay[i][j]: r(X_j + i) == r(X_j) for subsets j of the first i elements
    stay = [ranks[(1 << i) + np.arange(1 << i)] == ranks[:1 << i] for i in range(s)]
    lead = D[np.arange(len(D)), np.argmax(D != 0, axis=1)]
    normal = (lead <= 1)
    cands = []
    for p in range(s + 1):
        tail_zero = ~D[:, nN + p:].any(axis=1) if nN + p < w else np.ones(len(D), bool)
        cands.append(np.nonzero(normal & tail_zero)[0])
    vecs = [None] * s

    def grow(spans, vi):
        ext = np.zeros_like(spans)
        for c in range(q):
            ext |= spans[:, _shift(q, w, vi, c)]
        return np.vstack([spans, ext])

    def go(i, p, spans):
        if i == s:
            yield list(vecs), p
            return
        opts = []
        if p < s and not stay[i].any():
            # a new pivot lies outside every span so far
            opts.append((int(pw[nN + p]), p + 1))
        cand = cands[p]
        ok = (spans[:, cand] == stay[i][:, None]).all(axis=0)
        opts += [(int(c), p) for c in cand[ok]]
        for vi, np_ in opts:
            vecs[i] = tuple(int(x) for x in D[vi])
            yield from go(i + 1, np_, grow(spans, vi))

    origin = np.zeros((1, len(D)), dtype=bool)
    origin[0, 0] = True
    yield from go(0, 0, origin)


def _guts_flats(vecs, s, nN, f, q):
    """span(X) ∩ N for every local subset X of the side, as Flats."""
    pw = len(vecs[0]) - nN if vecs else 0
    # quotient coordinates first so echelon rows with an N pivot lie in N
    reorder = [tuple(v[nN:]) + tuple(v[:nN]) for v in vecs]
    bases = [[]] * (1 << s)
    out = [None] * (1 << s)
    out[0] = Flat(q, nN, ())
    cache = {}
    for X in range(1, 1 << s):
        low = (X & -X).bit_length() - 1
        Y = X ^ (1 << low)
        b, _ = gf.echelon_insert(bases[Y], reorder[low], f)
        bases[X] = b
        rows = tuple(sorted(r[pw:] for piv, r in b if piv >= pw))
        if rows not in cache:
            cache[rows] = span_flat(rows, q, nN)
        out[X] = cache[rows]
    return out


def realizable_schemes(M, A, k, field, witnesses=False):
    """Every realizable scheme for (A, E-A); with witnesses=True a dict scheme -> witness."""
    f = field if isinstance(field, gf.GF) else gf.field_create(field)
    A &= M.ground
    _check_guards(M, A, k, f.q)
    P = partition(M, A)
    s = popcount(A)
    nN = k - 1
    labels = P.labels.tolist()
    found = {}
    for flats, (vecs, p) in _extensions(M, A, k, f):
        groups = [set() for _ in range(P.count)]
        for j, c in enumerate(labels):
            groups[c].add(flats[j])
        sch = Scheme(A, k, f.q, tuple(frozenset(g) for g in groups))
        if sch not in found:
            found[sch] = _witness(vecs, p, nN, s, f, A)
    return found if witnesses else set(found)


# The extension search sees only M|A, so results are shared between every
# separation whose side has the same rank table.
_ext_cache = {}
_ext_lock = threading.Lock()


def _extensions(M, A, k, f):
    """Distinct guts-flat tuples over all extensions of M|A, each with its first witness."""
    key = (popcount(A), M.restrict(A).local_table().tobytes(), k, f.q)
    with _ext_lock:
        hit = _ext_cache.get(key)
    if hit is None:
        seen = {}
        for vecs, p in _assignments(M, A, k, f):
            flats = tuple(_guts_flats(vecs, popcount(A), k - 1, f, f.q))
            seen.setdefault(flats, (vecs, p))
        hit = list(seen.items())
        with _ext_lock:
            _ext_cache[key] = hit
    return hit


def clear_cache():
    with _ext_lock:
        _ext_cache.clear()


def _witness(vecs, p, nN, s, f, A):
    d = nN + p
    cols = [tuple(v[:d]) for v in vecs]
    pts = projective_points(nN, f.q) if nN else []
    cols += [tuple(pt) + (0,) * p for pt in pts]
    if d == 0:
        mat = gf.Matrix((), f, len(cols))
    else:
        mat = gf.Matrix.from_rows([[c[i] for c in cols] for i in range(d)], f)
    return RealizabilityWitness(mat, tuple(elements(A)), d)


def replay_witness(M, scheme, witness):
    """Check the definition of realizability directly on the extension matroid.

    M'|A must equal M|A, M'|E(N) must be PG(k-2, q), and for each class P and
    X ∈ P the set cl_{M'}(X) ∩ E(N) must be the point set of a flat in σ(P).
    """
    A = scheme.side
    s = popcount(A)
    nN = scheme.k - 1
    pts = projective_points(nN, scheme.q) if nN else []
    if witness.matrix.nrows == 0:
        Mp_table = np.zeros(1 << (s + len(pts)), dtype=np.int64)
    else:
        Mp_table = LinearMatroid(witness.matrix).table()
    if not np.array_equal(Mp_table[: 1 << s], M.restrict(A).local_table()):
        return False
    if nN:
        N = _pg_table(nN, scheme.q)
        idx = submask_array(((1 << len(pts)) - 1) << s)
        if not np.array_equal(Mp_table[idx], N):
            return False
    P = partition(M, A)
    for j, c in enumerate(P.labels.tolist()):
        X = j
        r = Mp_table[X]
        cl_pts = frozenset(pts[i] for i in range(len(pts))
                           if Mp_table[X | 1 << (s + i)] == r)
        options = {frozenset(F.points()) for F in scheme.assignment[c]}
        if cl_pts not in options:
            return False
    return True


def _pg_table(k, q):
    pts = projective_points(k, q)
    rows = [[p[i] for p in pts] for i in range(k)]
    return LinearMatroid.from_rows(rows, q).table()


# flats of PG(k-2, q) for k, q <= 3 are few, so their pairwise meets are memoized
_meet_dims = {}


def compatible(s1, s2, pi):
    """Every pair of flats meets in the dimension π prescribes for their classes."""
    if s1.q != s2.q or s1.k != s2.k:
        raise DimensionMismatch("schemes over different geometries")
    if pi.left.side != s1.side or pi.right.side != s2.side:
        raise DimensionMismatch("π table does not match the scheme sides")
    memo = _meet_dims
    for c1, flats1 in enumerate(s1.assignment):
        for c2, flats2 in enumerate(s2.assignment):
            want = pi(c1, c2)
            for F1 in flats1:
                for F2 in flats2:
                    key = (F1, F2)
                    if key not in memo:
                        memo[key] = flat_local_conn(F1, F2)
                    if memo[key] != want:
                        return False
    return True


def compatible_pair(M, A, field):
    """A compatible pair (σ1, σ2) of realizable schemes, or None.

    Pairs are tried in a fixed order; each scheme becomes one bitmask of
    flats per class, so one σ1 is tested against every σ2 at once.
    """
    f = field if isinstance(field, gf.GF) else gf.field_create(field)
    A &= M.ground
    B = M.ground & ~A
    k = lam(M, A) + 1
    S1 = sorted(realizable_schemes(M, A, k, f), key=_order)
    S2 = sorted(realizable_schemes(M, B, k, f), key=_order)
    if not S1 or not S2:
        return None
    pi = pi_table(M, A)
    index, G = _meet_masks(k, f.q)
    m1 = _class_masks(S1, index)
    m2 = _class_masks(S2, index)
    want = np.asarray(pi.values)
    for i in range(len(S1)):
        ok = G[m1[i][:, None, None], m2[None, :, :], want[:, None, :]].all(axis=(0, 2))
        hits = np.nonzero(ok)[0]
        if hits.size:
            pair = S1[i], S2[int(hits[0])]
            assert compatible(pair[0], pair[1], pi)
            return pair
    return None


@lru_cache(maxsize=None)
def _meet_masks(k, q):
    """Flat -> bit, and G[a, b, w]: every flat in mask a meets every flat in mask b in dim w."""
    flats = enumerate_flats(k - 1, q)
    index = {F: i for i, F in enumerate(flats)}
    nF = len(flats)
    meet = np.array([[flat_local_conn(F1, F2) for F2 in flats] for F1 in flats])
    masks = np.arange(1 << nF)
    member = (masks[:, None] >> np.arange(nF)) & 1 == 1
    G = np.ones((1 << nF, 1 << nF, k), dtype=bool)
    for i in range(nF):
        for j in range(nF):
            bad = meet[i, j] != np.arange(k)
            G[np.ix_(member[:, i], member[:, j], bad)] = False
    return index, G


def _class_masks(schemes, index):
    return np.array([[sum(1 << index[F] for F in flats) for flats in s.assignment]
                     for s in schemes], dtype=np.int64)


def _order(s):
    return str(s.encode())


def majic_check(M, A, field):
    """M is representable over the field iff a compatible realizable pair exists.

    Both sides are computed independently; DisagreementBug if they differ.
    """
    f = field if isinstance(field, gf.GF) else gf.field_create(field)
    rep = is_representable(M, f) is not None
    pair = compatible_pair(M, A, f) is not None
    if rep != pair:
        raise DisagreementBug(f"representable={rep} but compatible pair={pair}")
    return rep
