"""Named matroids and seeded random linear matroids."""

import numpy as np

from . import gf
from .matroid import GraphicMatroid, LinearMatroid, UniformMatroid


def uniform(r, n, labels=None):
    if labels is None and n <= 26:
        labels = [chr(ord("a") + i) for i in range(n)]
    return UniformMatroid(r, n, labels)


def u24():
    return uniform(2, 4)


def free(n):
    """Free matroid: every set independent (identity matrix over GF(2))."""
    rows = [[int(i == j) for j in range(n)] for i in range(n)]
    return LinearMatroid.from_rows(rows, 2)


def fano():
    # columns e1, e2, e3, e1+e2, e1+e3, e2+e3, e1+e2+e3
    rows = [
        [1, 0, 0, 1, 1, 0, 1],
        [0, 1, 0, 1, 0, 1, 1],
        [0, 0, 1, 0, 1, 1, 1],
    ]
    return LinearMatroid.from_rows(rows, 2, labels=["1", "2", "3", "12", "13", "23", "123"])


def fano_dual():
    rows = [
        [1, 1, 0, 1, 0, 0, 0],
        [1, 0, 1, 0, 1, 0, 0],
        [0, 1, 1, 0, 0, 1, 0],
        [1, 1, 1, 0, 0, 0, 1],
    ]
    return LinearMatroid.from_rows(rows, 2)


def non_fano():
    """F7^-: the Fano plane with one line relaxed; ternary, not binary."""
    rows = [
        [1, 0, 0, 1, 1, 0, 1],
        [0, 1, 0, 1, 0, 1, 1],
        [0, 0, 1, 0, 1, 1, 1],
    ]
    return LinearMatroid.from_rows(rows, 3)


def mk4():
    return GraphicMatroid([(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)])


def path_graph(m):
    """Graphic matroid of a path with m edges (a free matroid)."""
    return GraphicMatroid([(i, i + 1) for i in range(m)])


def cycle_graph(m):
    """Graphic matroid of an m-cycle, i.e. U_{m-1,m}."""
    return GraphicMatroid([(i, (i + 1) % m) for i in range(m)])


def ladder(m):
    """Graphic matroid of the 2 x m grid; rungs and rails ordered left to right."""
    edges = [(("t", 0), ("b", 0))]
    for i in range(1, m):
        edges += [(("t", i - 1), ("t", i)), (("b", i - 1), ("b", i)), (("t", i), ("b", i))]
    labels = ["r0"] + [f"{s}{i}" for i in range(1, m) for s in ("t", "b", "r")]
    return GraphicMatroid(edges, labels)


def direct_sum(*ms):
    """Direct sum of linear matroids over a common field."""
    f = ms[0].field
    rows = []
    total = sum(m.n for m in ms)
    off = 0
    labels = []
    for k, m in enumerate(ms):
        if m.field != f:
            raise ValueError("direct sum needs a common field")
        for r in m.matrix.rows:
            rows.append([0] * off + list(r) + [0] * (total - off - m.n))
        labels += [f"{lab}.{k}" for lab in m.labels]
        off += m.n
    return LinearMatroid.from_rows(rows, f.q, labels)


def uniform_linear(r, n, q):
    """A representation of U_{r,n} over GF(q) via a Vandermonde-style matrix, if one exists."""
    f = gf.field_create(q)
    if r == 2 and n <= q + 1:
        cols = [(1, 0)] + [(a, 1) for a in range(n - 1)]
        return LinearMatroid.from_rows([[c[i] for c in cols] for i in range(2)], q)
    if n <= q:
        rows = []
        for i in range(r):
            row = []
            for a in range(n):
                v = 1
                for _ in range(i):
                    v = f.mul[v][a]
                row.append(v)
            rows.append(row)
        return LinearMatroid.from_rows(rows, q)
    raise ValueError(f"no Vandermonde representation of U_{r},{n} over GF({q})")


NAMED = {
    "U24": u24,
    "U25": lambda: uniform(2, 5),
    "U35": lambda: uniform(3, 5),
    "U36": lambda: uniform(3, 6),
    "F7": fano,
    "F7*": fano_dual,
    "F7-": non_fano,
    "M(K4)": mk4,
}


def named(name):
    return NAMED[name]()


def random_linear(rng, q, r, n):
    """Uniformly random r x n matrix over GF(q) as a linear matroid."""
    f = gf.field_create(q)
    rows = rng.integers(0, f.q, size=(r, n))
    return LinearMatroid.from_rows(rows.tolist(), q)


def random_linear_corpus(seed, count, qs=(2, 3), n_range=(2, 12)):
    rng = np.random.default_rng(seed)
    out = []
    for _ in range(count):
        q = int(rng.choice(qs))
        n = int(rng.integers(n_range[0], n_range[1] + 1))
        r = int(rng.integers(1, min(n, 6) + 1))
        out.append(random_linear(rng, q, r, n))
    return out
