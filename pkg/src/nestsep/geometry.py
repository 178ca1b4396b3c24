"""Projective geometries PG(k-1, q) as subspace lattices of GF(q)^k, and towers."""

import math
from dataclasses import dataclass
from functools import total_ordering
from itertools import combinations, product

from . import gf
from .errors import AmbientMismatch, SizeGuard, guard

DIGIT_LIMIT = 10 ** 6


# ---------------------------------------------------------------- towers


@total_ordering
class Tower:
    """a1 ** (a2 ** (... ** an)), exact.

    The integer is materialized only when it has at most DIGIT_LIMIT digits;
    ``huge`` is set otherwise.  Comparisons with ints are always exact.
    """

    def __init__(self, *args):
        if not args:
            raise ValueError("tower needs at least one argument")
        if any(int(a) != a or a < 0 for a in args):
            raise ValueError("tower arguments are natural numbers")
        self.args = tuple(int(a) for a in args)
        self._head, self._top = _evaluate(self.args)

    @property
    def huge(self):
        return self._head is not None

    @property
    def value(self):
        """The exact int, or None when it is too large to hold."""
        return None if self.huge else self._top

    def __int__(self):
        if self.huge:
            raise OverflowError(f"tower{self.args} has more than {DIGIT_LIMIT} digits")
        return self._top

    def __str__(self):
        if not self.huge:
            return str(self._top)
        # exact form: the unevaluated bases, then the largest exponent we could compute
        s = str(self._top)
        for a in reversed(self._head):
            s = f"{a}^({s})" if "^" in s else f"{a}^{s}"
        return s

    def __repr__(self):
        return f"Tower{self.args}"

    def digits(self):
        """Approximate number of decimal digits (a float, possibly inf)."""
        if not self.huge:
            return len(str(self._top))
        return _log10_tower(self.args)

    def __gt__(self, other):
        if isinstance(other, Tower):
            if not (self.huge or other.huge):
                return self._top > other._top
            return NotImplemented
        return _exceeds(self.args, int(other))

    def __eq__(self, other):
        if isinstance(other, Tower):
            if not (self.huge or other.huge):
                return self._top == other._top
            return self.args == other.args
        if isinstance(other, int):
            return not _exceeds(self.args, other) and _exceeds(self.args, other - 1)
        return NotImplemented

    def __hash__(self):
        return hash(self.args)


def tower(*args):
    t = Tower(*args)
    return t if t.huge else t.value


def _evaluate(args):
    val = args[-1]
    rest = list(args[:-1])
    while rest:
        a = rest[-1]
        if a <= 1 or val == 0:
            val = a ** val
            rest.pop()
            continue
        est = val * math.log10(a) if val < 10 ** 300 else math.inf
        if est > DIGIT_LIMIT:
            return tuple(rest), val
        val = a ** val
        rest.pop()
    return None, val


def _exceeds(args, m):
    """tower(args) > m, decided exactly without building the tower."""
    if len(args) == 1:
        return args[0] > m
    a = args[0]
    if a == 0:
        value = 0 if _exceeds(args[1:], 0) else 1
        return value > m
    if a == 1:
        return 1 > m
    if m < 1:
        return True
    # a**R > m  iff  R > floor(log_a m)
    L = 0
    p = a
    while p <= m:
        p *= a
        L += 1
    return _exceeds(args[1:], L)


def _log10_tower(args):
    a = args[0]
    if len(args) == 1:
        return math.log10(a) if a > 0 else 0.0
    inner = _log10_tower(args[1:])
    if inner > 300:
        return math.inf
    try:
        return 10 ** inner * math.log10(a) if a > 1 else 0.0
    except OverflowError:
        return math.inf


# ---------------------------------------------------------------- flats


@dataclass(frozen=True)
class Flat:
    """A subspace of GF(q)^k in reduced row echelon form.

    As a flat of PG(k-1, q) it has rank ``dim``; the zero subspace is the
    empty flat.
    """

    q: int
    k: int
    rows: tuple

    @property
    def dim(self):
        return len(self.rows)

    @property
    def field(self):
        return gf.field_create(self.q)

    def __repr__(self):
        return f"Flat(q={self.q}, k={self.k}, rows={list(self.rows)})"

    def points(self):
        """Normalized nonzero vectors in the subspace (its projective points)."""
        f = self.field
        out = set()
        for coeffs in product(range(self.q), repeat=self.dim):
            v = [0] * self.k
            for c, r in zip(coeffs, self.rows):
                if c:
                    v = [f.add[x][f.mul[c][y]] for x, y in zip(v, r)]
            if any(v):
                out.add(gf.normalize(v, f))
        return sorted(out)

    def contains_vector(self, v):
        f = self.field
        basis = [(_pivot(r), r) for r in self.rows]
        return not any(gf.reduce_vector(v, basis, f))

    def join(self, other):
        _same_ambient(self, other)
        return span_flat(list(self.rows) + list(other.rows), self.q, self.k)

    def meet(self, other):
        _same_ambient(self, other)
        return intersect(self, other)

    def encode(self):
        return [list(r) for r in self.rows]


def _pivot(row):
    for i, x in enumerate(row):
        if x:
            return i
    raise ValueError("zero row")


def _same_ambient(F1, F2):
    if F1.q != F2.q or F1.k != F2.k:
        raise AmbientMismatch(f"GF({F1.q})^{F1.k} vs GF({F2.q})^{F2.k}")


def span_flat(vectors, q, k):
    f = gf.field_create(q)
    vectors = [tuple(v) for v in vectors]
    if any(len(v) != k for v in vectors):
        raise AmbientMismatch("vector of the wrong length")
    rows, _ = gf.rref(vectors, f, k)
    return Flat(q, k, tuple(rows))


def empty_flat(q, k):
    return Flat(q, k, ())


def full_flat(q, k):
    return Flat(q, k, tuple(tuple(int(i == j) for j in range(k)) for i in range(k)))


def intersect(F1, F2):
    """U ∩ W by the Zassenhaus algorithm."""
    _same_ambient(F1, F2)
    q, k = F1.q, F1.k
    if not F1.rows or not F2.rows:
        return empty_flat(q, k)
    f = gf.field_create(q)
    mat = [tuple(r) + tuple(r) for r in F1.rows] + [tuple(r) + (0,) * k for r in F2.rows]
    rows, pivots = gf.rref(mat, f, 2 * k)
    inter = [r[k:] for r, p in zip(rows, pivots) if p >= k]
    return span_flat(inter, q, k)


def flat_local_conn(F1, F2):
    """dim F1 + dim F2 - dim(F1 ∨ F2), i.e. dim(F1 ∩ F2)."""
    _same_ambient(F1, F2)
    return F1.dim + F2.dim - F1.join(F2).dim


def gaussian_binomial(n, r, q):
    if r < 0 or r > n:
        return 0
    num = 1
    den = 1
    for i in range(r):
        num *= q ** (n - i) - 1
        den *= q ** (i + 1) - 1
    return num // den


def count_flats(k, q):
    """Number of subspaces of GF(q)^k (flats of PG(k-1, q), empty flat included)."""
    gf.factor_prime_power(q)
    return sum(gaussian_binomial(k, i, q) for i in range(k + 1))


def enumerate_flats(k, q, max_count=10 ** 6):
    """Every subspace of GF(q)^k in canonical form, ordered by dimension then rows."""
    if q ** k > 2 ** 20:
        raise SizeGuard(f"q^k = {q ** k} exceeds 2^20")
    guard("enumerate_flats (count)", count_flats(k, q), max_count)
    gf.field_create(q)
    out = []
    for d in range(k + 1):
        for piv in combinations(range(k), d):
            free = [(i, c) for i, p in enumerate(piv) for c in range(p + 1, k) if c not in piv]
            for vals in product(range(q), repeat=len(free)):
                rows = [[0] * k for _ in range(d)]
                for i, p in enumerate(piv):
                    rows[i][p] = 1
                for (i, c), v in zip(free, vals):
                    rows[i][c] = v
                out.append(Flat(q, k, tuple(tuple(r) for r in rows)))
    return out


def projective_points(k, q):
    """Points of PG(k-1, q) as normalized vectors, in lexicographic order."""
    f = gf.field_create(q)
    pts = {gf.normalize(v, f) for v in product(range(q), repeat=k) if any(v)}
    return sorted(pts)


@dataclass(frozen=True)
class ProjectiveGeometry:
    k: int
    q: int

    @property
    def rank(self):
        return self.k

    def points(self):
        return projective_points(self.k, self.q)

    def flats(self):
        return enumerate_flats(self.k, self.q)

    def matroid(self):
        from .matroid import LinearMatroid

        pts = self.points()
        rows = [[p[i] for p in pts] for i in range(self.k)]
        return LinearMatroid.from_rows(rows, self.q)


def flats_bound_holds(k, q):
    """The number of flats of PG(k-1, q) is at most tower(q, k, k)."""
    return not Tower(q, k, k) < count_flats(k, q)
