"""Matroids exposed through their rank oracle.

Every matroid lives on an id space 0..n-1 and has a ``ground`` bitmask inside
it.  Minors and duals are lazy views that keep the parent's ids, so a set of
elements means the same thing in ``M`` and in ``M.contract(C).delete(D)``.
That is what makes M∘X cheap: it is just another view.
"""

import warnings
from functools import cached_property
from itertools import combinations

import numpy as np

from . import gf
from .bits import elements, mask_of, popcount, popcounts, submask_array
from .errors import InvalidRegion, SizeGuard, ValidationError, guard

# Rank tables over the whole id space are built up to this many ids.
TABLE_LIMIT = 20


class Matroid:
    """Base class; subclasses supply ``_rank`` and optionally ``_table``."""

    kind = "abstract"

    def __init__(self, n, labels=None, ground=None):
        self.n = n
        if labels is None:
            labels = tuple(f"e{i}" for i in range(n))
        labels = tuple(str(x) for x in labels)
        if len(labels) != n or len(set(labels)) != n:
            raise ValidationError("labels must be n distinct names")
        self.labels = labels
        self.ground = (1 << n) - 1 if ground is None else ground

    # ------------------------------------------------------------ rank oracle

    def _rank(self, X):
        raise NotImplementedError

    def _table(self):
        n = self.n
        t = np.zeros(1 << n, dtype=np.int64)
        for X in range(1 << n):
            if X & ~self.ground == 0:
                t[X] = self._rank(X)
        # Spread values from subsets of the ground set to every mask.
        return t[np.arange(1 << n) & self.ground]

    @cached_property
    def _cached_table(self):
        if self.n > TABLE_LIMIT:
            raise SizeGuard(f"rank table over {self.n} ids")
        t = self._table()
        t.setflags(write=False)
        return t

    def table(self):
        """Array T with T[X] = r(X ∩ ground) for every mask X < 2**n."""
        return self._cached_table

    def rank(self, X):
        if self.n <= 16:
            return int(self._cached_table[X & self.ground])
        return self._rank(X & self.ground)

    @property
    def full_rank(self):
        return self.rank(self.ground)

    @property
    def size(self):
        return popcount(self.ground)

    def __len__(self):
        return self.size

    def local_table(self):
        """Ranks indexed by masks over the ground elements renumbered 0..m-1."""
        return self.table()[submask_array(self.ground)]

    # -------------------------------------------------------------- set tools

    def mask(self, names):
        """Bitmask from an iterable of labels (or ints)."""
        out = 0
        for x in names:
            i = x if isinstance(x, int) else self.labels.index(x)
            out |= 1 << i
        return out

    def names(self, X):
        return [self.labels[i] for i in elements(X)]

    def is_independent(self, X):
        return self.rank(X) == popcount(X)

    def closure(self, X):
        r = self.rank(X)
        out = X
        for e in elements(self.ground & ~X):
            if self.rank(X | 1 << e) == r:
                out |= 1 << e
        return out

    def coclosure(self, X):
        return self.dual().closure(X)

    def is_loop(self, e):
        return self.rank(1 << e) == 0

    def is_coloop(self, e):
        return self.rank(self.ground & ~(1 << e)) < self.full_rank

    def loops(self):
        return mask_of(e for e in elements(self.ground) if self.is_loop(e))

    def parallel_classes(self):
        """Parallel classes of non-loop elements, each a bitmask."""
        seen = 0
        out = []
        for e in elements(self.ground):
            if seen >> e & 1 or self.is_loop(e):
                continue
            cls = 1 << e
            for f in elements(self.ground & ~((2 << e) - 1)):
                if not self.is_loop(f) and self.rank(1 << e | 1 << f) == 1:
                    cls |= 1 << f
            seen |= cls
            out.append(cls)
        return out

    def is_simple(self):
        return self.loops() == 0 and all(popcount(c) == 1 for c in self.parallel_classes())

    def basis(self, X=None):
        """Lexicographically first basis of X (default: the ground set)."""
        X = self.ground if X is None else X
        B = 0
        r = 0
        for e in elements(X):
            if self.rank(B | 1 << e) > r:
                B |= 1 << e
                r += 1
        return B

    def bases(self):
        r = self.full_rank
        out = []
        for combo in combinations(elements(self.ground), r):
            B = mask_of(combo)
            if self.rank(B) == r:
                out.append(B)
        return out

    # ---------------------------------------------------------------- views

    def dual(self):
        return DualView(self)

    def contract(self, C):
        return self.minor(C, 0)

    def delete(self, D):
        return self.minor(0, D)

    def restrict(self, X):
        return self.minor(0, self.ground & ~X)

    def minor(self, C, D):
        """M / C \\ D."""
        if C & D:
            raise InvalidRegion("contract and delete sets overlap")
        if (C | D) & ~self.ground:
            raise InvalidRegion("minor sets must lie in the ground set")
        if not C and not D:
            return self
        return MinorView(self, C, D)

    def same_oracle(self, other):
        """True iff both matroids have the same ground set and rank function."""
        if self.n != other.n or self.ground != other.ground:
            return False
        return bool(np.array_equal(self.table(), other.table()))

    def __repr__(self):
        return f"<{type(self).__name__} size={self.size} rank={self.full_rank}>"


class UniformMatroid(Matroid):
    kind = "uniform"

    def __init__(self, r, n, labels=None):
        if not 0 <= r <= n:
            raise ValidationError("uniform matroid needs 0 <= r <= n")
        super().__init__(n, labels)
        self.r = r

    def _rank(self, X):
        return min(popcount(X), self.r)

    def _table(self):
        return np.minimum(popcounts(self.n), self.r)


class LinearMatroid(Matroid):
    """Column matroid of a matrix over GF(q)."""

    kind = "linear"

    def __init__(self, matrix, labels=None):
        super().__init__(matrix.ncols, labels)
        self.matrix = matrix
        self.field = matrix.field
        self._cols = matrix.columns()

    @classmethod
    def from_rows(cls, rows, q, labels=None):
        return cls(gf.Matrix.from_rows(rows, gf.field_create(q)), labels)

    def _rank(self, X):
        return gf.rank_of([self._cols[j] for j in elements(X)], self.field)

    def _table(self):
        n = self.n
        f = self.field
        t = np.zeros(1 << n, dtype=np.int64)
        bases = [[]] * (1 << n)
        for X in range(1, 1 << n):
            low = (X & -X).bit_length() - 1
            Y = X ^ (1 << low)
            b, grew = gf.echelon_insert(bases[Y], self._cols[low], f)
            bases[X] = b
            t[X] = t[Y] + grew
        return t


class BasisMatroid(Matroid):
    """Matroid given by its list of bases (bitmasks)."""

    kind = "bases"
    VALIDATE_LIMIT = 12

    def __init__(self, n, bases, labels=None, validate=True):
        super().__init__(n, labels)
        bases = sorted(set(int(b) for b in bases))
        if not bases:
            raise ValidationError("a matroid has at least one basis")
        sizes = {popcount(b) for b in bases}
        if len(sizes) != 1:
            raise ValidationError("bases have different sizes")
        if any(b >> n for b in bases):
            raise ValidationError("basis outside ground set")
        self.basis_list = tuple(bases)
        self.r = sizes.pop()
        self.validated = False
        if validate:
            if n <= self.VALIDATE_LIMIT:
                _check_exchange(self.basis_list)
                self.validated = True
            else:
                warnings.warn("basis exchange not validated above 12 elements")

    def _rank(self, X):
        return max(popcount(X & b) for b in self.basis_list)

    def _table(self):
        pc = popcounts(self.n)
        ar = np.arange(1 << self.n)
        t = np.zeros(1 << self.n, dtype=np.int64)
        for b in self.basis_list:
            np.maximum(t, pc[ar & b], out=t)
        return t

    def bases(self):
        return list(self.basis_list)


def _check_exchange(bases):
    bset = set(bases)
    for b1 in bases:
        for b2 in bases:
            for x in elements(b1 & ~b2):
                base = b1 & ~(1 << x)
                if not any(base | 1 << y in bset for y in elements(b2 & ~b1)):
                    raise ValidationError("basis exchange axiom fails")


class GraphicMatroid(Matroid):
    """Cycle matroid of a multigraph given as an edge list of vertex pairs."""

    kind = "graphic"

    def __init__(self, edges, labels=None):
        edges = [tuple(e) for e in edges]
        super().__init__(len(edges), labels)
        self.edges = edges
        self.vertices = sorted({v for e in edges for v in e}, key=str)

    def _rank(self, X):
        parent = {}

        def find(v):
            while parent.get(v, v) != v:
                parent[v] = parent.get(parent[v], parent[v])
                v = parent[v]
            return v

        r = 0
        for i in elements(X):
            u, v = self.edges[i]
            a, b = find(u), find(v)
            if a != b:
                parent[a] = b
                r += 1
        return r


class TableMatroid(Matroid):
    """Matroid given directly by a rank table over all masks (trusted input)."""

    kind = "table"

    def __init__(self, n, table, labels=None):
        super().__init__(n, labels)
        t = np.asarray(table, dtype=np.int64)
        if t.shape != (1 << n,):
            raise ValidationError("rank table has the wrong length")
        self._t = t

    def _rank(self, X):
        return int(self._t[X])

    def _table(self):
        return self._t.copy()


class MinorView(Matroid):
    """M / C \\ D without materializing anything."""

    kind = "minor"

    def __init__(self, parent, C, D):
        super().__init__(parent.n, parent.labels, parent.ground & ~(C | D))
        self.parent = parent
        self.C = C
        self.D = D
        self._rc = parent.rank(C)

    def _rank(self, X):
        return self.parent.rank(X | self.C) - self._rc

    def _table(self):
        P = self.parent.table()
        ar = np.arange(1 << self.n)
        return P[(ar & self.ground) | self.C] - self._rc

    def minor(self, C, D):
        if C & D:
            raise InvalidRegion("contract and delete sets overlap")
        if (C | D) & ~self.ground:
            raise InvalidRegion("minor sets must lie in the ground set")
        if not C and not D:
            return self
        return MinorView(self.parent, self.C | C, self.D | D)


class DualView(Matroid):
    kind = "dual"

    def __init__(self, parent):
        super().__init__(parent.n, parent.labels, parent.ground)
        self.parent = parent

    def _rank(self, X):
        g = self.ground
        return popcount(X) + self.parent.rank(g & ~X) - self.parent.rank(g)

    def _table(self):
        P = self.parent.table()
        g = self.ground
        ar = np.arange(1 << self.n)
        Xg = ar & g
        return popcounts(self.n)[Xg] + P[g & ~Xg] - P[g]

    def dual(self):
        return self.parent


class MinorContext:
    """A split (C, D) of a region: C gets contracted, D deleted.

    ``apply(M, X)`` is M∘X, i.e. M with C∩X contracted and D∩X deleted.
    """

    def __init__(self, C, D):
        if C & D:
            raise InvalidRegion("C and D must be disjoint")
        self.C = C
        self.D = D

    def apply(self, M, X):
        return minor_apply(M, self, X)

    def __repr__(self):
        return f"MinorContext(C={self.C:#x}, D={self.D:#x})"


def minor_apply(M, ctx, X):
    if X & ~(ctx.C | ctx.D):
        raise InvalidRegion("X must lie inside C ∪ D")
    return M.minor(ctx.C & X, ctx.D & X)


# ------------------------------------------------------------- isomorphism


def _element_signatures(t, m):
    """Per-element invariant: histogram of (|S|, r(S)) over subsets S containing it."""
    pc = popcounts(m)
    key = pc * (m + 1) + t
    sigs = []
    for e in range(m):
        sel = (np.arange(1 << m) >> e) & 1 == 1
        sigs.append(tuple(np.bincount(key[sel], minlength=(m + 1) ** 2)))
    return sigs


def _iso_local(tM, tN, m, sM=None, sN=None):
    """Find a bijection f (local ids of N -> local ids of M) preserving ranks."""
    if tM.shape != tN.shape or not np.array_equal(np.sort(tM), np.sort(tN)):
        return None
    sM = _element_signatures(tM, m) if sM is None else sM
    sN = _element_signatures(tN, m) if sN is None else sN
    if sorted(sM) != sorted(sN):
        return None
    cand = [[x for x in range(m) if sM[x] == sN[i]] for i in range(m)]
    imgs = np.zeros(1, dtype=np.int64)
    used = [False] * m
    f = [0] * m

    def go(i, imgs):
        if i == m:
            return True
        lo, hi = 1 << i, 1 << (i + 1)
        want = tN[lo:hi]
        for x in cand[i]:
            if used[x]:
                continue
            new = imgs | (1 << x)
            if np.array_equal(tM[new], want):
                used[x] = True
                f[i] = x
                if go(i + 1, np.concatenate([imgs, new])):
                    return True
                used[x] = False
        return False

    return list(f) if go(0, imgs) else None


def isomorphism(M, N):
    """A rank-preserving bijection E(N) -> E(M) as a dict of ids, or None."""
    if M.size != N.size or M.full_rank != N.full_rank:
        return None
    m = M.size
    guard("isomorphism", m, 16)
    f = _iso_local(M.local_table(), N.local_table(), m)
    if f is None:
        return None
    eM, eN = elements(M.ground), elements(N.ground)
    return {eN[i]: eM[f[i]] for i in range(m)}


def is_isomorphic(M, N):
    return isomorphism(M, N) is not None


def has_minor(M, N, limit=12):
    """True iff some minor of M is isomorphic to N (exhaustive)."""
    guard("has_minor", M.size, limit)
    m, k = M.size, N.size
    rN = N.full_rank
    if k > m or rN > M.full_rank or k - rN > m - M.full_rank:
        return False
    tN = N.local_table()
    E = elements(M.ground)
    for keep in combinations(E, k):
        S = mask_of(keep)
        rest = M.ground & ~S
        for I in _independent_subsets(M, rest):
            if M.rank(S | I) - popcount(I) != rN:
                continue
            if _iso_local(M.contract(I).restrict(S).local_table(), tN, k) is not None:
                return True
    return False


def _independent_subsets(M, X):
    out = [0]
    for e in elements(X):
        out += [I | 1 << e for I in out if M.is_independent(I | 1 << e)]
    return out
