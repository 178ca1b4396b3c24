"""Branch decompositions, their width, exact branch-width and nested chains from paths."""

import re
from collections import deque
from dataclasses import dataclass, field

import numpy as np

from .bits import elements, popcount, submask_array
from .connectivity import Separation
from .errors import BadLabelling, NotAPath, NotCubic, ParseError, guard

BW_LIMIT = 10


@dataclass
class BranchTree:
    """An unrooted tree given by adjacency lists; ``leaf_of`` maps vertex -> element id."""

    adj: dict
    leaf_of: dict = field(default_factory=dict)

    @property
    def vertices(self):
        return sorted(self.adj)

    def edges(self):
        return sorted((u, v) for u in self.adj for v in self.adj[u] if u < v)

    def leaves(self):
        return [v for v in self.vertices if len(self.adj[v]) <= 1]

    def check_cubic(self):
        nv = len(self.adj)
        ne = len(self.edges())
        if nv and ne != nv - 1:
            raise NotCubic("not a tree")
        if nv and len(_reach(self, self.vertices[0], None)) != nv:
            raise NotCubic("not connected")
        bad = [v for v in self.adj if len(self.adj[v]) not in (0, 1, 3)]
        if bad:
            raise NotCubic(f"vertex {bad[0]} has degree {len(self.adj[bad[0]])}")

    def check_labels(self, M):
        self.check_cubic()
        if set(self.leaf_of) != set(self.leaves()):
            raise BadLabelling("every leaf needs exactly one label")
        labs = list(self.leaf_of.values())
        if len(set(labs)) != len(labs) or sum(1 << e for e in labs) != M.ground:
            raise BadLabelling("leaf labels are not a bijection onto E(M)")

    def display(self, u, v):
        """Elements on u's side of the edge uv."""
        out = 0
        for w in _reach(self, u, v):
            if w in self.leaf_of:
                out |= 1 << self.leaf_of[w]
        return out

    def to_string(self, M=None):
        name = (lambda e: M.labels[e]) if M is not None else str
        if not self.adj:
            return "()"
        if len(self.adj) == 1:
            return name(self.leaf_of[self.vertices[0]])
        start = min(self.leaves(), key=lambda w: self.leaf_of[w])
        (nxt,) = self.adj[start]
        return f"({name(self.leaf_of[start])},{_render(self, nxt, start, name)})"

    @classmethod
    def from_nested(cls, expr):
        """Build from nested tuples of element ids, e.g. ((0, 1), (2, 3))."""
        t = cls({}, {})
        counter = [0]

        def new():
            v = counter[0]
            counter[0] += 1
            t.adj[v] = []
            return v

        def link(a, b):
            t.adj[a].append(b)
            t.adj[b].append(a)

        def build(x):
            v = new()
            if isinstance(x, tuple):
                if len(x) != 2:
                    raise NotCubic("inner nodes of a nested expression have two children")
                for c in x:
                    link(v, build(c))
            else:
                t.leaf_of[v] = int(x)
            return v

        if isinstance(expr, tuple) and len(expr) in (2, 3):
            if len(expr) == 3:
                root = new()
                for c in expr:
                    link(root, build(c))
            else:
                link(build(expr[0]), build(expr[1]))
        else:
            build(expr)
        return t

    @classmethod
    def parse(cls, text, M):
        """Parse a parenthesized label expression such as ``(a,(b,(c,d)))``."""
        toks = re.findall(r"[(),]|[^(),\s]+", text)
        pos = [0]

        def peek():
            if pos[0] >= len(toks):
                raise ParseError(1, "unexpected end of tree expression")
            return toks[pos[0]]

        def item():
            if pos[0] >= len(toks):
                raise ParseError(1, "unexpected end of tree expression")
            tok = toks[pos[0]]
            pos[0] += 1
            if tok == "(":
                kids = [item()]
                while peek() == ",":
                    pos[0] += 1
                    kids.append(item())
                if peek() != ")":
                    raise ParseError(1, "expected ')'")
                pos[0] += 1
                return tuple(kids)
            if tok in ",)":
                raise ParseError(1, f"unexpected {tok!r}")
            return M.mask([tok]).bit_length() - 1

        expr = item()
        if pos[0] != len(toks):
            raise ParseError(1, "trailing input after tree expression")
        t = cls.from_nested(expr)
        t.check_labels(M)
        return t


def _reach(T, u, blocked):
    seen = {u}
    stack = [u]
    while stack:
        w = stack.pop()
        for x in T.adj[w]:
            if x not in seen and not (w == u and x == blocked):
                seen.add(x)
                stack.append(x)
    return seen


def _render(T, v, parent, name):
    if v in T.leaf_of:
        return name(T.leaf_of[v])
    kids = sorted((_render(T, c, v, name) for c in T.adj[v] if c != parent))
    return "(" + ",".join(kids) + ")"


def _lam_table(M):
    L = M.local_table()
    full = len(L) - 1
    ar = np.arange(len(L))
    return L + L[full ^ ar] - L[full]


def width(M, T):
    """Maximum over edges of λ(displayed set) + 1."""
    if M.size < 2:
        raise ValueError("width needs at least two elements")
    T.check_labels(M)
    return max(M.rank(X) + M.rank(M.ground & ~X) - M.full_rank + 1
               for X in (T.display(u, v) for u, v in T.edges()))


def branch_width(M, tree=False):
    """Exact branch-width by dynamic programming over subsets.

    c(X) is the least possible maximum edge width inside a rooted subtree
    with leaf set X, counting the edge above it.  With ``tree=True`` an
    optimal BranchTree is returned as well.
    """
    m = M.size
    guard("branch_width", m, BW_LIMIT)
    if m <= 1:
        return (m, None) if tree else m
    lam = _lam_table(M)
    size = 1 << m
    c = np.zeros(size, dtype=np.int64)
    split = np.zeros(size, dtype=np.int64)
    order = sorted(range(1, size), key=popcount)
    for X in order:
        if X & (X - 1) == 0:
            c[X] = lam[X] + 1
            continue
        best, arg = None, 0
        low = X & -X
        # Y contains the lowest element so each split is seen once
        for Y in submask_array(X ^ low).tolist():
            Y |= low
            if Y == X:
                continue
            v = max(c[Y], c[X ^ Y])
            if best is None or v < best:
                best, arg = v, Y
        c[X] = max(lam[X] + 1, best)
        split[X] = arg
    full = size - 1
    best, arg = None, 0
    low = 1
    for Y in submask_array(full ^ low).tolist():
        Y |= low
        if Y == full:
            continue
        v = max(c[Y], c[full ^ Y])
        if best is None or v < best:
            best, arg = v, Y
    bw = int(best)
    if not tree:
        return bw
    glob = elements(M.ground)

    def nest(X):
        if X & (X - 1) == 0:
            return glob[X.bit_length() - 1]
        Y = int(split[X])
        return (nest(Y), nest(X ^ Y))

    T = BranchTree.from_nested((nest(arg), nest(full ^ arg)))
    return bw, T


def all_labelled_trees(items):
    """Every cubic tree with leaves labelled by ``items`` (as nested tuples)."""
    items = list(items)
    if len(items) <= 2:
        yield tuple(items) if len(items) == 2 else (items[0] if items else ())
        return
    # rooted at the first item: trees are (first, rooted binary tree on the rest)
    for rest in _rooted(items[1:]):
        yield (items[0], rest)


def _rooted(items):
    if len(items) == 1:
        yield items[0]
        return
    head, tail = items[0], items[1:]
    # insert head on every edge (including above the root) of each tree on tail
    for t in _rooted(tail):
        yield from _insert(t, head)


def _insert(t, x):
    yield (x, t)
    if isinstance(t, tuple):
        a, b = t
        for a2 in _insert(a, x):
            yield (a2, b)
        for b2 in _insert(b, x):
            yield (a, b2)


def branch_width_brute(M):
    """Independent oracle: minimum width over every labelled cubic tree."""
    m = M.size
    guard("branch_width_brute", m, 8)
    if m <= 1:
        return m
    return min(width(M, BranchTree.from_nested(e)) for e in all_labelled_trees(elements(M.ground)))


def nested_from_path(M, T, path):
    """Displayed sets on the start side of an oriented path, as nested separations."""
    path = [tuple(e) for e in path]
    if not path:
        raise NotAPath("empty path")
    E = {frozenset(e) for e in T.edges()}
    if any(frozenset(e) not in E for e in path):
        raise NotAPath("edge not in the tree")
    # orient: the first edge's start is the vertex not shared with the second edge
    if len(path) == 1:
        verts = list(path[0])
    else:
        a, b = path[0]
        verts = [b, a] if b not in path[1] else [a, b]
        for u, v in path[1:]:
            if verts[-1] == u:
                verts.append(v)
            elif verts[-1] == v:
                verts.append(u)
            else:
                raise NotAPath("edges do not chain")
    if len(set(verts)) != len(verts):
        raise NotAPath("path repeats a vertex")
    k = width(M, T)
    out = []
    prev = None
    for u, v in zip(verts, verts[1:]):
        X = T.display(u, v)
        if X != prev:
            out.append(Separation(X, M.ground & ~X, k))
            prev = X
    return out


def diameter(T):
    """Length in edges of a longest path."""
    if len(T.adj) <= 1:
        return 0
    far, _ = _farthest(T, T.vertices[0])
    _, d = _farthest(T, far)
    return d


def _farthest(T, s):
    dist = {s: 0}
    dq = deque([s])
    while dq:
        w = dq.popleft()
        for x in T.adj[w]:
            if x not in dist:
                dist[x] = dist[w] + 1
                dq.append(x)
    v = max(dist, key=lambda x: (dist[x], -x))
    return v, dist[v]


def leafbound_check(T):
    T.check_cubic()
    return len(T.leaves()) <= 3 ** diameter(T)


def _canon(T):
    """Canonical string of an unlabelled tree, rooted at its center(s)."""
    if len(T.adj) <= 2:
        return str(len(T.adj))
    deg = {v: len(T.adj[v]) for v in T.adj}
    layer = [v for v in T.adj if deg[v] == 1]
    left = len(T.adj)
    removed = set()
    while left > 2:
        left -= len(layer)
        nxt = []
        for v in layer:
            removed.add(v)
            for x in T.adj[v]:
                if x not in removed:
                    deg[x] -= 1
                    if deg[x] == 1:
                        nxt.append(x)
        layer = nxt
    centers = [v for v in T.adj if v not in removed]

    def enc(v, p):
        return "(" + "".join(sorted(enc(x, v) for x in T.adj[v] if x != p)) + ")"

    if len(centers) == 1:
        return enc(centers[0], None)
    a, b = centers
    return "".join(sorted([enc(a, b), enc(b, a)]))


def cubic_trees(max_leaves):
    """All unlabelled cubic trees with 2..max_leaves leaves, one per isomorphism class."""
    level = {_canon(t): t for t in [BranchTree({0: [1], 1: [0]}, {})]}
    out = list(level.values())
    for _ in range(3, max_leaves + 1):
        nxt = {}
        for t in level.values():
            for u, v in t.edges():
                s = _subdivide_attach(t, u, v)
                nxt.setdefault(_canon(s), s)
        level = nxt
        out += list(level.values())
    return out


def _subdivide_attach(t, u, v):
    adj = {w: list(xs) for w, xs in t.adj.items()}
    m = max(adj) + 1
    leaf = m + 1
    adj[u][adj[u].index(v)] = m
    adj[v][adj[v].index(u)] = m
    adj[m] = [u, v, leaf]
    adj[leaf] = [m]
    return BranchTree(adj, {})
