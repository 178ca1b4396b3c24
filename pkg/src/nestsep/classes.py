"""Equivalence of subsets across a separation, the partition P(M, A) and π.

X, Y ⊆ A are equivalent when ⊓(X, Z) = ⊓(Y, Z) for every Z ⊆ B = E - A.
Since ⊓(X, Z) = r(Z) - (r(X ∪ Z) - r(X)), that is the same as X and Y having
the same fingerprint Z -> r(X ∪ Z) - r(X), which is what we hash.
"""

from dataclasses import dataclass
from itertools import combinations

import numpy as np

from .bits import elements, popcount, submask_array
from .connectivity import is_k_separation, local_conn
from .dissection import contained, is_linked
from .errors import HypothesisFail, SizeGuard, guard
from .geometry import Tower, intersect, span_flat
from .matroid import minor_apply

PARTITION_LIMIT = 14
OTHER_SIDE_LIMIT = 20


@dataclass(frozen=True, eq=False)
class EquivPartition:
    """P(M, A): ``labels[j]`` is the class of ``subsets[j]`` (the j-th submask of A).

    Classes are numbered by their smallest member, so class 0 holds ∅ and two
    partitions of the same side are equal iff their label arrays are.
    """

    side: int
    subsets: np.ndarray
    labels: np.ndarray
    reps: tuple

    @property
    def count(self):
        return len(self.reps)

    def __len__(self):
        return len(self.reps)

    def class_of(self, X):
        if X & ~self.side:
            raise ValueError("X is not a subset of the side")
        return int(self.labels[_local_index(X, self.side)])

    def members(self, c):
        return [int(x) for x in self.subsets[self.labels == c]]

    def same_as(self, other):
        return self.side == other.side and bool(np.array_equal(self.labels, other.labels))

    def as_dict(self, M=None):
        out = {}
        for c in range(self.count):
            ms = self.members(c)
            out[c] = [M.names(x) for x in ms] if M is not None else ms
        return out


def _local_index(X, side):
    j = 0
    for b, i in enumerate(elements(side)):
        if X >> i & 1:
            j |= 1 << b
    return j


def _canonical_labels(rows):
    """Class ids for the rows of a 2-d array, numbered by first occurrence."""
    if rows.shape[1] == 0:
        return np.zeros(rows.shape[0], dtype=np.int64)
    _, first, inv = np.unique(rows, axis=0, return_index=True, return_inverse=True)
    inv = inv.reshape(-1)
    order = np.argsort(first)
    relabel = np.empty_like(order)
    relabel[order] = np.arange(len(order))
    return relabel[inv]


def fingerprint_matrix(M, A):
    """Rows: X ⊆ A; columns: Z ⊆ B; entries r(X ∪ Z) - r(X)."""
    B = M.ground & ~A
    guard("partition (other side)", popcount(B), OTHER_SIDE_LIMIT)
    XA = submask_array(A)
    ZB = submask_array(B)
    T = M.table()
    return XA, T[XA[:, None] | ZB[None, :]] - T[XA][:, None]


def fingerprint(M, A, X):
    B = M.ground & ~A
    guard("equivalent", popcount(B), OTHER_SIDE_LIMIT)
    ZB = submask_array(B)
    T = M.table()
    return T[X | ZB] - T[X]


def equivalent(M, A, X, Y):
    return bool(np.array_equal(fingerprint(M, A, X), fingerprint(M, A, Y)))


def equivalent_literal(M, A, X, Y):
    """The definition itself: ⊓(X, Z) = ⊓(Y, Z) for all Z ⊆ E - A."""
    B = M.ground & ~A
    return all(local_conn(M, X, Z) == local_conn(M, Y, Z) for Z in submask_array(B).tolist())


def partition(M, A):
    A &= M.ground
    guard("partition", popcount(A), PARTITION_LIMIT)
    XA, F = fingerprint_matrix(M, A)
    labels = _canonical_labels(F)
    count = int(labels.max()) + 1
    reps = [0] * count
    seen = [False] * count
    for j, c in enumerate(labels.tolist()):
        if not seen[c]:
            seen[c] = True
            reps[c] = int(XA[j])
    labels.setflags(write=False)
    return EquivPartition(A, XA, labels, tuple(reps))


# --------------------------------------------------------------- Lemma checks


def classes1_bound(M, A, k):
    """|P(M, A)| <= tower(q, k-1, 2) for a loopless GF(q)-represented M."""
    field = getattr(M, "field", None)
    if field is None:
        raise HypothesisFail("needs a linear matroid")
    if M.loops():
        raise HypothesisFail("matroid has loops")
    if k < 2 or not is_k_separation(M, A, k):
        raise HypothesisFail(f"(A, E-A) is not a {k}-separation with k >= 2")
    return not Tower(field.q, k - 1, 2) < partition(M, A).count


def _span_of(M, X):
    cols = [M.matrix.column(j) for j in elements(X)]
    return span_flat(cols, M.field.q, M.matrix.nrows)


def guts_flat(M, A):
    """span(A) ∩ span(E - A) in the column space of a linear matroid."""
    return intersect(_span_of(M, A), _span_of(M, M.ground & ~A))


def guts_fingerprint(M, A, X):
    """span(X) ∩ guts, canonical; equal values force X and Y to be equivalent."""
    if X & ~A:
        raise ValueError("X must be a subset of A")
    return intersect(_span_of(M, X), guts_flat(M, A))


@dataclass(frozen=True, eq=False)
class PiTable:
    left: EquivPartition
    right: EquivPartition
    values: np.ndarray

    def __call__(self, c1, c2):
        return int(self.values[c1, c2])

    def transpose(self):
        return PiTable(self.right, self.left, self.values.T.copy())


def pi_table(M, A, check_limit=8):
    A &= M.ground
    B = M.ground & ~A
    PA = partition(M, A)
    PB = partition(M, B)
    T = M.table()
    ra = np.array(PA.reps)
    rb = np.array(PB.reps)
    values = T[ra][:, None] + T[rb][None, :] - T[ra[:, None] | rb[None, :]]
    if popcount(A) <= check_limit and popcount(B) <= check_limit:
        XA, YB = PA.subsets, PB.subsets
        full = T[XA][:, None] + T[YB][None, :] - T[XA[:, None] | YB[None, :]]
        if not np.array_equal(full, values[PA.labels][:, PB.labels]):
            raise AssertionError("π depends on the choice of representatives")
    values.setflags(write=False)
    return PiTable(PA, PB, values)


def classes2_counterexample(M, A, e):
    """None if every class of P(M, A) is P1 ∩ P2 for classes of P(M\\e, A), P(M/e, A).

    Otherwise a dict describing the first class for which no such pair exists.
    """
    A &= M.ground
    if not (M.ground & ~A) >> e & 1:
        raise ValueError("e must lie in E - A")
    P = partition(M, A)
    P1 = partition(M.delete(1 << e), A)
    P2 = partition(M.contract(1 << e), A)
    for c in range(P.count):
        inside = P.labels == c
        l1 = set(P1.labels[inside].tolist())
        l2 = set(P2.labels[inside].tolist())
        if len(l1) == 1 and len(l2) == 1:
            c1, c2 = l1.pop(), l2.pop()
            joint = (P1.labels == c1) & (P2.labels == c2)
            if np.array_equal(joint, inside):
                continue
            extra = P.subsets[joint & ~inside]
            return {"class": c, "representative": P.reps[c], "P1": c1, "P2": c2,
                    "intruder": int(extra[0])}
        return {"class": c, "representative": P.reps[c], "split": True}
    return None


def classes2_check(M, A, e):
    return classes2_counterexample(M, A, e) is None


def classes2_refined_check(M, A, e):
    """P(M, A) is the common refinement of P(M\\e, A), P(M/e, A) and whether e ∈ cl(X).

    This always holds: r(X ∪ Z) - r(X) for Z ∋ e splits into the contraction
    fingerprint plus r(X ∪ e) - r(X).
    """
    P = partition(M, A)
    P1 = partition(M.delete(1 << e), A)
    P2 = partition(M.contract(1 << e), A)
    T = M.table()
    spans = T[P.subsets | (1 << e)] - T[P.subsets]
    joint = np.stack([P1.labels, P2.labels, spans], axis=1)
    return bool(np.array_equal(_canonical_labels(joint), P.labels))


# ----------------------------------------------------- stable contained dissections


def _stable(M, B, ctx, cache):
    b = B.length

    def base(side):
        if side not in cache:
            cache[side] = partition(M, side)
        return cache[side]

    for i in range(1, b + 1):
        for j in range(i + 1, b + 1):
            Mo = minor_apply(M, ctx, B.block(i, j - 1))
            left, right = B.block(0, i - 1), B.block(j, b)
            if not partition(Mo, left).same_as(base(left)):
                return False
            if not partition(Mo, right).same_as(base(right)):
                return False
    return True


def stable_contained_dissection(M, D, ctx, b, max_candidates=200000):
    """Search the dissections of length b contained in D for a stable one.

    Stable: for all 1 <= i < j <= b the partitions of B[0, i-1] and of B[j, b]
    are unchanged by passing to M∘B[i, j-1].  Returns the first witness in
    lexicographic order of cut positions, or None.
    """
    t = D.length
    k = D.k
    interior = D.block(1, t - 1)
    if (ctx.C | ctx.D) != interior or ctx.C & ctx.D:
        raise HypothesisFail("(C, D) must partition the interior A[1, t-1]")
    if not is_linked(M, D):
        raise HypothesisFail("dissection is not linked")
    if local_conn(M.contract(ctx.C), D.parts[0], D.parts[-1]) != k:
        raise HypothesisFail("⊓_{M/C}(A_0, A_t) != k")
    if b < 1 or b > t:
        return None
    from math import comb

    if comb(t, b) > max_candidates:
        raise SizeGuard(f"{comb(t, b)} contained dissections to search")
    cache = {}
    for cuts in combinations(range(1, t + 1), b):
        B = contained(D, (0,) + cuts)
        if _stable(M, B, ctx, cache):
            return B
    return None


def link_context(M, D):
    """A (C, D) split of the interior with ⊓_{M/C}(A_0, A_t) = κ, via Tutte linking."""
    from .connectivity import tutte_link
    from .matroid import MinorContext

    X, Y = D.parts[0], D.parts[-1]
    interior = D.block(1, D.length - 1)
    C = tutte_link(M, X, Y)
    return MinorContext(C, interior & ~C)


def is_stable(M, B, ctx):
    """Re-verify a witness from scratch (no shared cache)."""
    return _stable(M, B, ctx, {})

