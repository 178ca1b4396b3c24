"""Every matroid on at most 8 elements, up to isomorphism.

Generated by single-element extension: each matroid on m+1 elements is an
extension of its deletion of the last element.  Extensions correspond to
modular cuts of flats; the nonempty ones are enumerated through their
hyperplanes (linear subclasses), and ``modular_cuts`` is kept as a slower
independent check.  Isomorphic copies are removed with the bijection
search from ``matroid``.  The result is shipped as ``data/catalogue.npz``
(rank tables, uint8); ``generate`` rebuilds it.

Known counts (OEIS A055545): 1, 2, 4, 8, 17, 38, 98, 306, 1724.
"""

from functools import lru_cache
from pathlib import Path

import numpy as np

from .bits import popcounts
from .matroid import BasisMatroid, _element_signatures, _iso_local

DATA = Path(__file__).parent / "data" / "catalogue.npz"
KNOWN_COUNTS = (1, 2, 4, 8, 17, 38, 98, 306, 1724)
MAX_N = 8


def flats_of(t, m):
    """Flats of the matroid with local rank table t, as a list of masks."""
    out = []
    for X in range(1 << m):
        r = t[X]
        if all(t[X | 1 << e] > r for e in range(m) if not X >> e & 1):
            out.append(X)
    return out


def modular_cuts(t, m):
    """Every modular cut (as a frozenset of flats), including the empty one.

    Flats are decided in order of decreasing rank, so when a flat comes up
    all its superflats are settled: it may join only if they all did, and it
    must join if it is the meet of a chosen modular pair.
    """
    flats = sorted(flats_of(t, m), key=lambda F: (-int(t[F]), F))
    nf = len(flats)
    above = [0] * nf
    for i, F in enumerate(flats):
        for j, G in enumerate(flats):
            if j != i and G & F == F:
                above[i] |= 1 << j
    pairs = [[] for _ in range(nf)]
    idx = {F: i for i, F in enumerate(flats)}
    for i, F1 in enumerate(flats):
        for j in range(i + 1, nf):
            F2 = flats[j]
            I = F1 & F2
            if I in (F1, F2):
                continue
            if t[F1] + t[F2] == t[F1 | F2] + t[I]:
                pairs[idx[I]].append(1 << i | 1 << j)
    out = []

    def go(i, chosen):
        if i == nf:
            out.append(chosen)
            return
        forced = any(pm & chosen == pm for pm in pairs[i])
        if not forced:
            go(i + 1, chosen)
        if above[i] & ~chosen == 0:
            go(i + 1, chosen | 1 << i)

    go(0, 0)
    for chosen in out:
        yield frozenset(F for i, F in enumerate(flats) if chosen >> i & 1)


def extend(t, m, cut):
    """Rank table of the extension of t by a new element m determined by ``cut``."""
    full = (1 << m) - 1
    closure = np.arange(1 << m)
    # cl(X) for every X
    for X in range(1 << m):
        c = X
        for e in range(m):
            if not X >> e & 1 and t[X | 1 << e] == t[X]:
                c |= 1 << e
        closure[X] = c
    in_cut = np.array([int(closure[X]) in cut for X in range(full + 1)])
    return np.concatenate([t, t + (~in_cut).astype(t.dtype)])


def _hyperplanes_and_colines(t, m):
    r = int(t[-1])
    fl = flats_of(t, m)
    hyp = [F for F in fl if t[F] == r - 1]
    col = [F for F in fl if t[F] == r - 2]
    over = [sum(1 << i for i, H in enumerate(hyp) if H & C == C) for C in col]
    return hyp, over


def linear_subclasses(t, m):
    """Every set of hyperplanes meeting each coline in 0, 1 or all of its hyperplanes."""
    hyp, over = _hyperplanes_and_colines(t, m)
    nh = len(hyp)
    out = []

    def settle(inc, exc):
        changed = True
        while changed:
            changed = False
            for hc in over:
                ci = inc & hc
                if ci & (ci - 1):
                    if exc & hc:
                        return None
                    if hc & ~inc:
                        inc |= hc
                        changed = True
                elif ci and exc & hc and hc & ~(inc | exc):
                    exc |= hc & ~inc
                    changed = True
        return inc, exc

    def go(inc, exc):
        st = settle(inc, exc)
        if st is None:
            return
        inc, exc = st
        free = ((1 << nh) - 1) & ~(inc | exc)
        if not free:
            out.append(inc)
            return
        b = free & -free
        go(inc | b, exc)
        go(inc, exc | b)

    go(0, 0)
    return hyp, out


def extensions(t, m):
    """Rank tables of every single-element extension of t (new element gets id m)."""
    hyp, subclasses = linear_subclasses(t, m)
    ar = np.arange(1 << m)
    below = [(ar & ~H) == 0 for H in hyp]
    tables = [np.concatenate([t, t + 1])]  # empty cut: a coloop
    for sub in subclasses:
        outside = np.zeros(1 << m, dtype=bool)
        for i, H in enumerate(hyp):
            if not sub >> i & 1:
                outside |= below[i]
        tables.append(np.concatenate([t, t + outside.astype(t.dtype)]))
    return tables


def _key(t, m):
    sigs = _element_signatures(t, m)
    return tuple(sorted(sigs)), sigs


def generate(max_n=MAX_N, progress=None):
    """Return {m: array of shape (count, 2**m)} for m = 0..max_n."""
    levels = {0: [np.zeros(1, dtype=np.int64)]}
    for m in range(max_n):
        buckets = {}
        reps = []
        for t in levels[m]:
            for u in extensions(t, m):
                key, sigs = _key(u, m + 1)
                bucket = buckets.setdefault(key, [])
                if any(_iso_local(v, u, m + 1, sv, sigs) is not None for v, sv in bucket):
                    continue
                bucket.append((u, sigs))
                reps.append(u)
        reps.sort(key=lambda u: (int(u[-1]), tuple(u)))
        levels[m + 1] = reps
        if progress:
            progress(m + 1, len(reps))
    return {m: np.array(v, dtype=np.uint8) for m, v in levels.items()}


def save(tables, path=DATA):
    path.parent.mkdir(parents=True, exist_ok=True)
    np.savez_compressed(path, **{f"n{m}": a for m, a in tables.items()})


@lru_cache(maxsize=None)
def tables(m):
    """Rank tables of all matroids on m elements (read-only array)."""
    if not 0 <= m <= MAX_N:
        raise ValueError(f"catalogue covers 0..{MAX_N} elements")
    with np.load(DATA) as data:
        a = data[f"n{m}"].astype(np.int64)
    a.setflags(write=False)
    return a


def _from_table(t, m):
    r = int(t[-1])
    pc = popcounts(m)
    bases = np.nonzero((pc == r) & (t == r))[0]
    return BasisMatroid(m, [int(b) for b in bases], validate=False)


def matroids(m):
    """All matroids on m elements, one per isomorphism class, as basis lists."""
    return [_from_table(t, m) for t in tables(m)]


def upto(max_n):
    out = []
    for m in range(max_n + 1):
        out += matroids(m)
    return out


if __name__ == "__main__":
    import time

    t0 = time.time()
    res = generate(progress=lambda m, c: print(f"n={m}: {c} ({time.time() - t0:.1f}s)", flush=True))
    save(res)
