import itertools

import numpy as np
import pytest

from nestsep import corpus


def rank_mod_p(cols, p):
    """Rank of the columns over GF(p) by plain numpy elimination (p prime)."""
    if not cols:
        return 0
    A = np.array(cols, dtype=np.int64).T % p
    r = 0
    for c in range(A.shape[1]):
        piv = np.nonzero(A[r:, c])[0]
        if piv.size == 0:
            continue
        i = r + piv[0]
        A[[r, i]] = A[[i, r]]
        A[r] = A[r] * pow(int(A[r, c]), p - 2, p) % p
        for j in range(A.shape[0]):
            if j != r and A[j, c]:
                A[j] = (A[j] - A[j, c] * A[r]) % p
        r += 1
        if r == A.shape[0]:
            break
    return r


def subsets(items):
    items = list(items)
    for k in range(len(items) + 1):
        yield from itertools.combinations(items, k)


@pytest.fixture
def u24():
    return corpus.u24()


@pytest.fixture
def fano():
    return corpus.fano()


# one line per acceptance criterion, printed at the end of the session
ACCEPTANCE = {}


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(ACCEPTANCE):
        terminalreporter.write_line(ACCEPTANCE[n])
