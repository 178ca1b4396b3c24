"""Plain-text matroid files.

    # comment
    matroid fano
    type linear          # linear | uniform | bases | graphic
    field 2              # linear only
    rank 3               # linear only: number of matrix rows
    elements 1 2 3 12 13 23 123
    1 0 0 1 1 0 1        # body
    ...

Bodies: matrix rows (linear), ``params r n`` (uniform), one basis per line as
element labels with ``-`` for the empty basis (bases), one ``u v`` edge per
line (graphic).  ``elements`` is optional except for bases files.
"""

from . import gf
from .bits import elements
from .errors import MatroidError, NotPrimePower, ParseError, ValidationError
from .matroid import BasisMatroid, GraphicMatroid, LinearMatroid, UniformMatroid

TYPES = ("linear", "uniform", "bases", "graphic")


def parse_matroid(text):
    header = {}
    body = []
    for no, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        word, _, rest = line.partition(" ")
        rest = rest.strip()
        if word in ("matroid", "type", "field", "rank", "elements", "params"):
            if word in header:
                raise ParseError(no, f"duplicate {word} line")
            header[word] = (no, rest)
        else:
            body.append((no, line))
    if "type" not in header:
        raise ParseError(1, "missing type line")
    tline, kind = header["type"]
    if kind not in TYPES:
        raise ParseError(tline, f"unknown type {kind!r}")
    labels = header["elements"][1].split() if "elements" in header else None
    name = header["matroid"][1] if "matroid" in header else None
    try:
        M = _BUILD[kind](header, body, labels)
    except ParseError:
        raise
    except ValidationError:
        raise
    except (MatroidError, ValueError) as exc:
        raise ValidationError(str(exc)) from exc
    M.name = name
    return M


def _int(header, key):
    if key not in header:
        raise ParseError(1, f"missing {key} line")
    no, val = header[key]
    try:
        return int(val)
    except ValueError:
        raise ParseError(no, f"{key} must be an integer, got {val!r}") from None


def _linear(header, body, labels):
    q = _int(header, "field")
    try:
        f = gf.field_create(q)
    except NotPrimePower:
        raise ParseError(header["field"][0], f"{q} is not a prime power") from None
    r = _int(header, "rank")
    if len(body) != r:
        raise ParseError(body[-1][0] if body else header["rank"][0],
                         f"expected {r} matrix rows, found {len(body)}")
    rows = []
    for no, line in body:
        try:
            row = [int(x) for x in line.split()]
        except ValueError:
            raise ParseError(no, "matrix entries must be integers") from None
        if any(x < 0 or x >= q for x in row):
            raise ParseError(no, f"entry outside GF({q})")
        if rows and len(row) != len(rows[0]):
            raise ParseError(no, "ragged matrix row")
        rows.append(row)
    if r == 0:
        if labels is None:
            raise ParseError(header["rank"][0], "a rank-0 matrix needs an elements line")
        return LinearMatroid(gf.Matrix((), f, len(labels)), labels)
    if labels is not None and len(labels) != len(rows[0]):
        raise ParseError(header["elements"][0], "elements line does not match the matrix width")
    return LinearMatroid(gf.Matrix.from_rows(rows, f), labels)


def _uniform(header, body, labels):
    if "params" not in header:
        raise ParseError(1, "missing params line")
    no, val = header["params"]
    try:
        r, n = (int(x) for x in val.split())
    except ValueError:
        raise ParseError(no, "params needs two integers r n") from None
    if body:
        raise ParseError(body[0][0], "uniform files have no body")
    return UniformMatroid(r, n, labels)


def _bases(header, body, labels):
    if labels is None:
        raise ParseError(1, "bases files need an elements line")
    pos = {x: i for i, x in enumerate(labels)}
    bases = []
    for no, line in body:
        b = 0
        for tok in line.split():
            if tok == "-":
                continue
            if tok not in pos:
                raise ParseError(no, f"unknown element {tok!r}")
            b |= 1 << pos[tok]
        bases.append(b)
    if not bases:
        raise ParseError(1, "no bases listed")
    return BasisMatroid(len(labels), bases, labels)


def _graphic(header, body, labels):
    edges = []
    for no, line in body:
        parts = line.split()
        if len(parts) != 2:
            raise ParseError(no, "an edge line has two vertices")
        edges.append(tuple(parts))
    if labels is not None and len(labels) != len(edges):
        raise ParseError(header["elements"][0], "elements line does not match the edge count")
    return GraphicMatroid(edges, labels)


_BUILD = {"linear": _linear, "uniform": _uniform, "bases": _bases, "graphic": _graphic}


def serialize(M, name=None):
    """Text form of M; kinds without a native body are written as basis lists."""
    name = name or getattr(M, "name", None) or "M"
    labels = M.names(M.ground)
    out = [f"matroid {name}"]
    whole = M.ground == (1 << M.n) - 1
    if isinstance(M, LinearMatroid) and whole:
        out += ["type linear", f"field {M.field.q}", f"rank {M.matrix.nrows}",
                "elements " + " ".join(labels)]
        out += [" ".join(str(x) for x in row) for row in M.matrix.rows]
    elif isinstance(M, UniformMatroid) and whole:
        out += ["type uniform", f"params {M.r} {M.n}", "elements " + " ".join(labels)]
    elif isinstance(M, GraphicMatroid) and whole:
        out += ["type graphic", "elements " + " ".join(labels)]
        out += [f"{u} {v}" for u, v in M.edges]
    else:
        out += ["type bases", "elements " + " ".join(labels)]
        ids = elements(M.ground)
        for b in M.bases():
            out.append(" ".join(M.labels[i] for i in ids if b >> i & 1) or "-")
    return "\n".join(out) + "\n"


def load(path):
    with open(path, encoding="utf-8") as fh:
        return parse_matroid(fh.read())


def witness_text(w, labels, name="witness"):
    """A representation witness in file form."""
    f = w.matrix.field
    out = [f"matroid {name}", "type linear", f"field {f.q}", f"rank {w.matrix.nrows}",
           "elements " + " ".join(labels)]
    out += [" ".join(str(x) for x in row) for row in w.matrix.rows]
    return "\n".join(out) + "\n"
