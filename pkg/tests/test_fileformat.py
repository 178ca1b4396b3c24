import numpy as np
import pytest

from nestsep import corpus
from nestsep.errors import ParseError, ValidationError
from nestsep.fileformat import parse_matroid, serialize

FANO = """\
# the Fano plane
matroid fano
type linear
field 2
rank 3
elements 1 2 3 12 13 23 123
1 0 0 1 1 0 1
0 1 0 1 0 1 1
0 0 1 0 1 1 1
"""


def test_parse_fano():
    M = parse_matroid(FANO)
    assert M.name == "fano" and M.labels[3] == "12"
    assert M.same_oracle(corpus.fano())


@pytest.mark.parametrize("name", ["U24", "F7", "F7*", "M(K4)", "U35"])
def test_roundtrip(name):
    M = corpus.named(name)
    N = parse_matroid(serialize(M, name))
    assert N.labels == M.labels
    assert np.array_equal(N.local_table(), M.local_table())


def test_roundtrip_minor_view():
    M = corpus.fano().contract(1).delete(2)
    N = parse_matroid(serialize(M))
    assert np.array_equal(N.local_table(), M.local_table())


def test_rank_zero_bases():
    N = parse_matroid("type bases\nelements x y\n-\n")
    assert N.full_rank == 0 and N.size == 2


def test_graphic_and_uniform():
    G = parse_matroid("type graphic\n1 2\n2 3\n3 1\n")
    U = parse_matroid("type uniform\nparams 2 3\n")
    assert np.array_equal(G.table(), U.table())


@pytest.mark.parametrize("text,line", [
    ("type linear\nfield 6\nrank 1\n1 0\n", 2),
    ("type linear\nfield 2\nrank 2\n1 0\n0 1 1\n", 5),
    ("type linear\nfield 3\nrank 1\n1 3\n", 4),
    ("type spam\n", 1),
    ("type bases\nelements a b\na\nc\n", 4),
    ("type uniform\nparams 2\n", 2),
    ("type uniform\ntype uniform\n", 2),
])
def test_parse_errors(text, line):
    with pytest.raises(ParseError) as info:
        parse_matroid(text)
    assert info.value.line == line


def test_bases_validation():
    with pytest.raises(ValidationError):
        parse_matroid("type bases\nelements a b c d\na b\nc d\n")
    with pytest.raises(ValidationError):
        parse_matroid("type uniform\nparams 5 3\n")
