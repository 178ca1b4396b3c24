"""Local connectivity, the connectivity function, kappa and Tutte linking."""

from dataclasses import dataclass

import numpy as np

from .bits import elements, popcount, submask_array
from .errors import Overlap, guard

KAPPA_LIMIT = 24


@dataclass(frozen=True)
class Separation:
    A: int
    B: int
    k: int


def local_conn(M, X, Y):
    """r(X) + r(Y) - r(X ∪ Y)."""
    return M.rank(X) + M.rank(Y) - M.rank(X | Y)


def lam(M, X):
    """Connectivity function λ_M(X) = ⊓_M(X, E - X)."""
    g = M.ground
    X &= g
    return M.rank(X) + M.rank(g & ~X) - M.rank(g)


def lambda_table(M):
    """λ_M(X) for every mask X (values for X ⊄ E are those of X ∩ E)."""
    T = M.table()
    g = M.ground
    Xg = np.arange(len(T)) & g
    return T[Xg] + T[g & ~Xg] - T[g]


def is_k_separation(M, A, k):
    g = M.ground
    A &= g
    return A != 0 and A != g and lam(M, A) < k


def is_exact(M, A, k):
    return is_k_separation(M, A, k) and lam(M, A) == k - 1


def separation(M, A, k):
    return Separation(A, M.ground & ~A, k)


def kappa(M, X, Y):
    """min λ(Z) over X ⊆ Z ⊆ E - Y, with the numerically smallest optimal Z."""
    if X & Y:
        raise Overlap("X and Y must be disjoint")
    g = M.ground
    free = g & ~(X | Y)
    guard("kappa", popcount(free), KAPPA_LIMIT)
    if M.n <= 16:
        Zs = X | submask_array(free)
        T = M.table()
        vals = T[Zs] + T[g & ~Zs] - T[g]
        i = int(np.argmin(vals))
        return int(vals[i]), int(Zs[i])
    best = None
    for S in _iter_submasks(free):
        v = lam(M, X | S)
        if best is None or v < best[0]:
            best = (v, X | S)
    return best


def _iter_submasks(x):
    # increasing numeric order
    idx = elements(x)
    for j in range(1 << len(idx)):
        s = 0
        for b, i in enumerate(idx):
            if j >> b & 1:
                s |= 1 << i
        yield s


def kappa_value(M, X, Y):
    return kappa(M, X, Y)[0]


def kappa_table(M):
    """K[X, Y] = κ(X, Y) for all disjoint local masks X, Y of the ground set.

    Entries with X ∩ Y ≠ ∅ are set to a large sentinel.  Indices are local:
    bit j refers to the j-th ground element.
    """
    L = M.local_table()
    m = M.size
    guard("kappa_table", m, 10)
    size = 1 << m
    full = size - 1
    lamv = L + L[full ^ np.arange(size)] - L[full]
    big = np.int64(1 << 20)
    ar = np.arange(size)
    disjoint = (ar[:, None] & ar[None, :]) == 0
    H = np.where(disjoint, lamv[None, :], big)
    for b in range(m):
        without = ar[(ar >> b) & 1 == 0]
        H[:, without] = np.minimum(H[:, without], H[:, without | (1 << b)])
    # H is indexed [Y, X]
    return H.T.copy()


def conn_upper_check(M, X, Y, C):
    """⊓_{M/C}(X, Y) <= κ_M(X, Y)."""
    return local_conn(M.contract(C), X, Y) <= kappa_value(M, X, Y)


def tutte_link(M, X, Y):
    """An independent C ⊆ E - (X ∪ Y) with ⊓_{M/C}(X, Y) = κ_M(X, Y).

    Each element outside X ∪ Y is contracted if that keeps κ, and deleted
    otherwise; Tutte's theorem says one of the two always works.  The
    contracted set is then replaced by one of its bases.
    """
    k = kappa_value(M, X, Y)
    cur = M
    Cp = 0
    for e in elements(M.ground & ~(X | Y)):
        b = 1 << e
        con = cur.contract(b)
        if kappa_value(con, X, Y) == k:
            cur = con
            Cp |= b
        else:
            cur = cur.delete(b)
            assert kappa_value(cur, X, Y) == k, "linking theorem violated"
    return M.basis(Cp)
