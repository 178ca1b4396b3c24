"""k-dissections: ordered partitions whose prefix cuts all have λ <= k."""

import logging
from dataclasses import dataclass
from itertools import combinations

import numpy as np

from .bits import elements, popcount, popcounts, submask_array
from .connectivity import Separation, is_k_separation, kappa, kappa_value, lam
from .errors import CutTooLarge, EmptyPart, HypothesisFail, NotNested, NotPartition, guard

log = logging.getLogger(__name__)


@dataclass(frozen=True)
class Dissection:
    parts: tuple
    k: int

    @property
    def length(self):
        return len(self.parts) - 1

    def block(self, i, j):
        """A[i, j], the union of parts i..j (empty if i > j)."""
        out = 0
        for p in self.parts[i:j + 1]:
            out |= p
        return out

    def prefix(self, i):
        """A[0, i-1]."""
        return self.block(0, i - 1)

    def merged(self, f):
        """The contained dissection picked out by f = (0, f(1), ..., f(s))."""
        return contained(self, f)

    def names(self, M):
        return [M.names(p) for p in self.parts]


def validate(M, parts, k):
    parts = tuple(int(p) for p in parts)
    if any(p == 0 for p in parts):
        raise EmptyPart("dissection parts must be nonempty")
    seen = 0
    for p in parts:
        if p & seen:
            raise NotPartition("parts overlap")
        seen |= p
    if seen != M.ground:
        raise NotPartition("parts do not cover the ground set")
    pre = 0
    for i in range(1, len(parts)):
        pre |= parts[i - 1]
        v = lam(M, pre)
        if v > k:
            raise CutTooLarge(i, v)
    return Dissection(parts, k)


def to_nested(M, D):
    """The t nested (k+1)-separations (A[0,i-1], A[i,t])."""
    return [Separation(D.prefix(i), M.ground & ~D.prefix(i), D.k + 1)
            for i in range(1, len(D.parts))]


def from_nested(M, seps, k=None):
    if k is None:
        if not seps:
            raise ValueError("k is needed for an empty chain")
        k = seps[0].k
    prev = 0
    parts = []
    for s in seps:
        if s.A & ~M.ground or s.B != M.ground & ~s.A:
            raise NotPartition("separation does not partition the ground set")
        if not is_k_separation(M, s.A, k):
            raise CutTooLarge(len(parts) + 1, lam(M, s.A))
        if prev & ~s.A or prev == s.A:
            raise NotNested("chain is not strictly increasing")
        parts.append(s.A & ~prev)
        prev = s.A
    parts.append(M.ground & ~prev)
    return validate(M, parts, k - 1)


def contains(X, Y):
    """Witness f if Y arises from X by merging consecutive blocks, else None.

    The last block of Y absorbs X[f(s), t].
    """
    f = []
    i = 0
    for y in Y.parts:
        if i >= len(X.parts):
            return None
        f.append(i)
        acc = 0
        while acc != y:
            if i >= len(X.parts) or X.parts[i] & ~y:
                return None
            acc |= X.parts[i]
            i += 1
    if i != len(X.parts):
        return None
    return tuple(f)


def contained(D, f):
    f = tuple(f)
    if not f or f[0] != 0 or any(a >= b for a, b in zip(f, f[1:])) or f[-1] > D.length:
        raise ValueError("f must be strictly increasing with f(0) = 0")
    ends = list(f[1:]) + [len(D.parts)]
    parts = tuple(D.block(a, b - 1) for a, b in zip(f, ends))
    return Dissection(parts, D.k)


def is_linked(M, D):
    if D.length < 1:
        raise ValueError("a linked dissection needs at least two parts")
    return kappa_value(M, D.parts[0], D.parts[-1]) == D.k


def _merge_at_cuts(D, cuts, k):
    """Dissection whose prefix cuts are exactly the given cut indices of D."""
    return Dissection(contained(D, (0,) + tuple(cuts)).parts, k)


def extract_linked(M, D, n):
    """A linked l-dissection of length n (l <= D.k) from a k-dissection of length >= n**(k+1).

    Follows the inductive argument: drop to k-1 when enough cuts (or
    unlinked positions) have λ below k, otherwise find n-1 consecutive
    positions i with κ(A[0,i-1], A[i+1,t]) = k and merge the flanks.
    """
    if n < 1:
        raise ValueError("n must be positive")
    k = D.k
    if D.length < n ** (k + 1):
        raise HypothesisFail(f"dissection of length {D.length} is shorter than {n}**{k + 1}")
    if k == 0:
        # every 0-dissection is linked since κ(A_0, A_t) <= λ(A_0) = 0
        out = contained(D, tuple(range(n + 1)))
        assert is_linked(M, out)
        return out

    low = [i for i in range(1, len(D.parts)) if lam(M, D.prefix(i)) <= k - 1]
    if len(low) >= n ** k:
        log.debug("k=%d: %d cuts below k, recursing", k, len(low))
        return extract_linked(M, _merge_at_cuts(D, low, k - 1), n)
    high = [i for i in range(1, len(D.parts)) if i not in low]
    A = _merge_at_cuts(D, high, k)
    t = A.length
    assert t >= n ** (k + 1) - n ** k + 1

    marked = []
    witnesses = []
    for i in range(1, t):
        v, Z = kappa(M, A.prefix(i), A.block(i + 1, t))
        if v == k:
            marked.append(i)
        else:
            witnesses.append(Z)
    if len(witnesses) >= n ** k:
        # the separating sets are automatically strictly nested
        parts = []
        prev = 0
        for Z in witnesses:
            parts.append(Z & ~prev)
            prev = Z
        parts.append(M.ground & ~prev)
        log.debug("k=%d: %d unlinked positions, recursing", k, len(witnesses))
        return extract_linked(M, validate(M, parts, k - 1), n)

    run = n - 1
    mset = set(marked)
    for i in range(0, t - run):
        if all(j in mset for j in range(i + 1, i + run + 1)):
            parts = ((A.block(0, i),) + A.parts[i + 1:i + run + 1]
                     + (A.block(i + run + 1, t),))
            out = Dissection(parts, k)
            assert kappa_value(M, parts[0], parts[-1]) == k
            return out
    raise AssertionError("no window of linked positions; counting argument violated")


def seqcon_check(M, S, T, C, Dsub, X, k):
    """If λ(X) = λ_{M/C\\D}(S) = k then λ of X in M/(C-X)\\(D-X) is k as well.

    Returns True when the hypotheses fail (nothing to check).
    """
    g = M.ground
    parts = (S, T, C, Dsub)
    if sum(popcount(p) for p in parts) != popcount(g) or (S | T | C | Dsub) != g:
        raise NotPartition("(S, T, C, D) must partition E(M)")
    if S & ~X or X & T:
        raise HypothesisFail("need S ⊆ X ⊆ E - T")
    if lam(M, X) != k or lam(M.minor(C, Dsub), S) != k:
        return True
    return lam(M.minor(C & ~X, Dsub & ~X), X) == k


def find_longest_dissection(M, k, limit=12):
    """A k-dissection of maximum length.

    Equivalent to a longest chain of proper nonempty sets with λ <= k; solved
    by dynamic programming over subsets, ties going to the smallest masks.
    """
    m = M.size
    guard("find_longest_dissection", m, limit)
    L = M.local_table()
    size = 1 << m
    full = size - 1
    ar = np.arange(size)
    lamv = L + L[full ^ ar] - L[full]
    valid = (lamv <= k) & (ar != 0) & (ar != full)
    pc = popcounts(m)
    best = np.full(size, -1, dtype=np.int64)
    h = np.zeros(size, dtype=np.int64)
    for c in range(1, m + 1):
        S = ar[pc == c]
        inner = np.zeros(len(S), dtype=np.int64)
        for e in range(m):
            has = (S >> e) & 1 == 1
            np.maximum(inner, np.where(has, h[S & ~(1 << e)], 0), out=inner)
        best[S] = np.where(valid[S], inner + 1, -1)
        h[S] = np.maximum(inner, best[S])
    t = int(best.max()) if valid.any() else 0
    glob = submask_array(M.ground)
    if t <= 0:
        return Dissection((M.ground,), k)
    chain = []
    cur = int(np.nonzero(best == t)[0][0])
    chain.append(cur)
    while best[cur] > 1:
        want = best[cur] - 1
        cand = [s for s in range(cur) if s & ~cur == 0 and best[s] == want]
        cur = cand[0]
        chain.append(cur)
    chain.reverse()
    parts = []
    prev = 0
    for s in chain:
        parts.append(_globalize(s & ~prev, glob))
        prev = s
    parts.append(_globalize(full & ~prev, glob))
    return validate(M, parts, k)


def _globalize(local, glob):
    out = 0
    for j in elements(local):
        out |= int(glob[1 << j])
    return out


def longest_dissection_brute(M, k):
    """Independent oracle: longest chain by plain recursion over supersets."""
    g = M.ground
    memo = {}

    def longest_from(S):
        # longest chain of valid sets strictly containing S
        if S in memo:
            return memo[S]
        best = 0
        for T in _proper_supersets(S, g):
            if T != g and lam(M, T) <= k:
                best = max(best, 1 + longest_from(T))
        memo[S] = best
        return best

    return longest_from(0)


def _proper_supersets(S, g):
    free = elements(g & ~S)
    for r in range(1, len(free) + 1):
        for extra in combinations(free, r):
            T = S
            for e in extra:
                T |= 1 << e
            yield T
