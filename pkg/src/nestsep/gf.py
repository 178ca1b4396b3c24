"""Arithmetic in GF(q) and exact linear algebra over it.

Elements of GF(p^m) are ints in [0, q): the base-p digits of the value are the
coefficients of a polynomial residue modulo a fixed irreducible polynomial.
Vectors are tuples of such ints, matrices are lists of rows.
"""

from dataclasses import dataclass, field
from functools import lru_cache
from itertools import product

from .errors import NotPrimePower, guard

FIELD_LIMIT = 1024

# One fixed modulus per (p, m), low coefficient first, monic.
# Each entry is the lexicographically first monic irreducible, which is what
# _first_irreducible() would also produce; keeping the table makes the choice
# explicit for the orders people actually use.
MODULI = {
    (2, 2): (1, 1, 1),        # x^2 + x + 1
    (2, 3): (1, 1, 0, 1),     # x^3 + x + 1
    (2, 4): (1, 1, 0, 0, 1),  # x^4 + x + 1
    (3, 2): (1, 0, 1),        # x^2 + 1
    (5, 2): (2, 0, 1),        # x^2 + 2
    (7, 2): (1, 0, 1),        # x^2 + 1
}


def factor_prime_power(q):
    """Return (p, m) with q == p**m, or raise NotPrimePower."""
    if q < 2:
        raise NotPrimePower(f"{q} is not a prime power")
    p = 2
    while p * p <= q and q % p:
        p += 1
    if q % p:
        p = q
    m = 0
    r = q
    while r % p == 0:
        r //= p
        m += 1
    if r != 1:
        raise NotPrimePower(f"{q} is not a prime power")
    return p, m


def _poly_has_root(coeffs, p):
    for x in range(p):
        acc = 0
        for c in reversed(coeffs):
            acc = (acc * x + c) % p
        if acc == 0:
            return True
    return False


def _polymod(a, mod, p):
    a = list(a)
    dm = len(mod) - 1
    inv_lead = pow(mod[-1], p - 2, p)
    for i in range(len(a) - 1, dm - 1, -1):
        c = a[i] * inv_lead % p
        if c:
            for j in range(dm + 1):
                a[i - dm + j] = (a[i - dm + j] - c * mod[j]) % p
    return a[:dm]


def is_irreducible(coeffs, p):
    """Irreducibility of a monic polynomial over GF(p) by trial division."""
    d = len(coeffs) - 1
    if d <= 1:
        return True
    for e in range(1, d // 2 + 1):
        for low in product(range(p), repeat=e):
            divisor = list(low) + [1]
            if not any(_polymod(coeffs, divisor, p)):
                return False
    return True


def _first_irreducible(p, m):
    for low in product(range(p), repeat=m):
        coeffs = tuple(reversed(low)) + (1,)
        if coeffs[0] == 0:
            continue
        if is_irreducible(coeffs, p):
            return coeffs
    raise AssertionError("no irreducible polynomial found")  # pragma: no cover


@dataclass(frozen=True)
class GF:
    p: int
    m: int
    modulus: tuple
    q: int = field(init=False)
    add: tuple = field(init=False, repr=False, compare=False)
    mul: tuple = field(init=False, repr=False, compare=False)
    neg: tuple = field(init=False, repr=False, compare=False)
    inv: tuple = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        q = self.p ** self.m
        object.__setattr__(self, "q", q)
        add, mul = _tables(self.p, self.m, self.modulus)
        object.__setattr__(self, "add", add)
        object.__setattr__(self, "mul", mul)
        object.__setattr__(self, "neg", tuple(row.index(0) for row in add))
        inv = [0] * q
        for a in range(1, q):
            inv[a] = mul[a].index(1)
        object.__setattr__(self, "inv", tuple(inv))

    def __repr__(self):
        return f"GF({self.q})"

    def sub(self, a, b):
        return self.add[a][self.neg[b]]

    def elements(self):
        return range(self.q)

    def nonzero(self):
        return range(1, self.q)


def _tables(p, m, modulus):
    q = p ** m

    def digits(a):
        return [(a // p ** i) % p for i in range(m)]

    def value(ds):
        return sum(d * p ** i for i, d in enumerate(ds))

    add = tuple(tuple(value([(x + y) % p for x, y in zip(digits(a), digits(b))])
                      for b in range(q)) for a in range(q))
    if m == 1:
        mul = tuple(tuple(a * b % p for b in range(q)) for a in range(q))
        return add, mul
    rows = []
    for a in range(q):
        da = digits(a)
        row = []
        for b in range(q):
            db = digits(b)
            prod = [0] * (2 * m - 1)
            for i, x in enumerate(da):
                if x:
                    for j, y in enumerate(db):
                        prod[i + j] = (prod[i + j] + x * y) % p
            row.append(value(_polymod(prod, modulus, p)))
        rows.append(tuple(row))
    return add, tuple(rows)


@lru_cache(maxsize=None)
def field_create(q):
    """The field of order q, with a modulus fixed once per order.

    Arithmetic is by q x q lookup tables, so q is capped at FIELD_LIMIT.
    """
    p, m = factor_prime_power(q)
    guard("field order", q, FIELD_LIMIT)
    if m == 1:
        modulus = (0, 1)
    else:
        modulus = MODULI.get((p, m)) or _first_irreducible(p, m)
    return GF(p, m, modulus)


def mul(a, b, f):
    return f.mul[a][b]


# ---------------------------------------------------------------- linear algebra


def normalize(v, f):
    """Scale v so its first nonzero entry is 1 (zero vector unchanged)."""
    for x in v:
        if x:
            s = f.inv[x]
            return tuple(f.mul[s][y] for y in v)
    return tuple(v)


def reduce_vector(v, basis, f):
    """Reduce v against an echelon basis given as (pivot, row) pairs with row[pivot] == 1."""
    v = list(v)
    add, mul_, neg = f.add, f.mul, f.neg
    for piv, row in basis:
        c = v[piv]
        if c:
            nc = neg[c]
            mrow = mul_[nc]
            v = [add[x][mrow[y]] for x, y in zip(v, row)]
    return v


def echelon_insert(basis, v, f):
    """Return (new_basis, grew). ``basis`` is a list of (pivot, row) pairs."""
    r = reduce_vector(v, basis, f)
    for i, x in enumerate(r):
        if x:
            s = f.inv[x]
            row = tuple(f.mul[s][y] for y in r)
            return basis + [(i, row)], True
    return basis, False


def rank_of(vectors, f):
    """Rank of a list of vectors over f."""
    basis = []
    rk = 0
    for v in vectors:
        basis, grew = echelon_insert(basis, v, f)
        rk += grew
    return rk


def rref(rows, f, ncols=None):
    """Reduced row echelon form; returns (rows, pivots) with leftmost pivots.

    Zero rows are dropped, so len(rows) is the rank.
    """
    if ncols is None:
        ncols = len(rows[0]) if rows else 0
    mat = [list(r) for r in rows]
    pivots = []
    rk = 0
    add, mul_, neg, inv = f.add, f.mul, f.neg, f.inv
    for c in range(ncols):
        piv = None
        for i in range(rk, len(mat)):
            if mat[i][c]:
                piv = i
                break
        if piv is None:
            continue
        mat[rk], mat[piv] = mat[piv], mat[rk]
        s = inv[mat[rk][c]]
        mat[rk] = [mul_[s][x] for x in mat[rk]]
        prow = mat[rk]
        for i in range(len(mat)):
            if i != rk and mat[i][c]:
                mrow = mul_[neg[mat[i][c]]]
                mat[i] = [add[x][mrow[y]] for x, y in zip(mat[i], prow)]
        pivots.append(c)
        rk += 1
        if rk == len(mat):
            break
    return [tuple(r) for r in mat[:rk]], pivots


@dataclass(frozen=True)
class Matrix:
    """A matrix over GF(q); rows are tuples of field ints."""

    rows: tuple
    field: GF
    ncols: int

    @classmethod
    def from_rows(cls, rows, f):
        rows = tuple(tuple(int(x) for x in r) for r in rows)
        ncols = len(rows[0]) if rows else 0
        for r in rows:
            if len(r) != ncols:
                raise ValueError("ragged matrix")
            if any(x < 0 or x >= f.q for x in r):
                raise ValueError(f"entry outside {f}")
        return cls(rows, f, ncols)

    @property
    def nrows(self):
        return len(self.rows)

    def column(self, j):
        return tuple(r[j] for r in self.rows)

    def columns(self):
        return [self.column(j) for j in range(self.ncols)]


def column_rank(mat, cols):
    """Rank of the columns of ``mat`` whose indices are in ``cols`` (iterable or bitmask)."""
    if isinstance(cols, int):
        cols = [j for j in range(mat.ncols) if cols >> j & 1]
    return rank_of([mat.column(j) for j in cols], mat.field)
