"""Command-line front end.

Sets are comma-separated element labels; matroids come from a text file
(--matroid) or the named corpus (--named).  Output is JSON by default,
aligned text with --format text.
"""

import argparse
import json
import sys

from . import corpus, verify as verify_mod
from .bits import popcount
from .branchwidth import branch_width
from .classes import partition, pi_table
from .connectivity import kappa, lam, local_conn, tutte_link
from .dissection import extract_linked, find_longest_dissection, is_linked, validate
from .errors import MatroidError
from .fileformat import load, witness_text
from .geometry import Tower, count_flats, enumerate_flats, flats_bound_holds
from .representation import is_excluded_minor, is_representable, max_nested_kseps, theorem_report
from .schemes import compatible_pair, realizable_schemes, replay_witness


def _matroid(args):
    if args.matroid:
        return load(args.matroid)
    if args.named:
        if args.named not in corpus.NAMED:
            raise MatroidError(f"unknown named matroid {args.named!r}; known: {sorted(corpus.NAMED)}")
        return corpus.named(args.named)
    raise MatroidError("give --matroid FILE or --named NAME")


def _set(M, text):
    if text is None or text.strip() in ("", "-"):
        return 0
    names = [x.strip() for x in text.split(",") if x.strip()]
    unknown = [x for x in names if x not in M.labels]
    if unknown:
        raise MatroidError(f"unknown element(s) {unknown}")
    return M.mask(names) & M.ground


def _parts(M, text):
    """Parts separated by ';' or '|', elements by ','."""
    return [_set(M, p) for p in text.replace("|", ";").split(";")]


def _fields(text):
    return [int(x) for x in text.split(",") if x.strip()]


# ------------------------------------------------------------------ commands


def cmd_rank(args):
    M = _matroid(args)
    X = _set(M, args.set)
    return {"set": M.names(X), "rank": M.rank(X)}


def cmd_lambda(args):
    M = _matroid(args)
    X = _set(M, args.set)
    return {"set": M.names(X), "value": lam(M, X)}


def cmd_kappa(args):
    M = _matroid(args)
    v, Z = kappa(M, _set(M, args.x), _set(M, args.y))
    return {"value": v, "witness": M.names(Z)}


def cmd_link(args):
    M = _matroid(args)
    X, Y = _set(M, args.x), _set(M, args.y)
    C = tutte_link(M, X, Y)
    return {"C": M.names(C), "kappa": kappa(M, X, Y)[0],
            "local_conn_after": local_conn(M.contract(C), X, Y)}


def _dissection_out(M, D):
    cuts = [lam(M, D.prefix(i)) for i in range(1, len(D.parts))]
    return {"k": D.k, "length": D.length, "parts": D.names(M), "cuts": cuts}


def cmd_dissect(args):
    M = _matroid(args)
    if args.parts:
        D = validate(M, _parts(M, args.parts), args.k)
        out = _dissection_out(M, D)
        if D.length >= 1:
            out["linked"] = is_linked(M, D)
        return out
    return _dissection_out(M, find_longest_dissection(M, args.k))


def cmd_linked_extract(args):
    M = _matroid(args)
    D = validate(M, _parts(M, args.parts), args.k)
    out = extract_linked(M, D, args.n)
    res = _dissection_out(M, out)
    res["linked"] = is_linked(M, out)
    return res


def cmd_classes(args):
    M = _matroid(args)
    P = partition(M, _set(M, args.side))
    return {"side": M.names(P.side), "count": P.count,
            "classes": {str(c): [M.names(x) for x in P.members(c)] for c in range(P.count)}}


def cmd_pi(args):
    M = _matroid(args)
    pi = pi_table(M, _set(M, args.side))
    return {"left": [M.names(x) for x in pi.left.reps],
            "right": [M.names(x) for x in pi.right.reps],
            "values": pi.values.tolist()}


def _k_for(M, A, k):
    return lam(M, A) + 1 if k is None else k


def _scheme_out(s):
    return {str(c): v for c, v in s.encode().items()}


def cmd_schemes(args):
    M = _matroid(args)
    A = _set(M, args.side)
    S = realizable_schemes(M, A, _k_for(M, A, args.k), args.q)
    return {"count": len(S), "schemes": sorted((_scheme_out(s) for s in S), key=str)}


def cmd_realizable(args):
    M = _matroid(args)
    A = _set(M, args.side)
    found = realizable_schemes(M, A, _k_for(M, A, args.k), args.q, witnesses=True)
    rows = []
    for s, w in sorted(found.items(), key=lambda sw: str(_scheme_out(sw[0]))):
        labels = M.names(A) + [f"n{i}" for i in range(w.matrix.ncols - popcount(A))]
        rows.append({"scheme": _scheme_out(s), "witness": witness_text(w, labels),
                     "replayed": replay_witness(M, s, w)})
    return {"count": len(rows), "realizable": rows}


def cmd_compat(args):
    M = _matroid(args)
    pair = compatible_pair(M, _set(M, args.side), args.q)
    if pair is None:
        return {"compatible": False}
    return {"compatible": True, "sigma1": _scheme_out(pair[0]), "sigma2": _scheme_out(pair[1])}


def cmd_represent(args):
    M = _matroid(args)
    w = is_representable(M, args.q)
    if w is None:
        return {"representable": False}
    return {"representable": True, "matrix": [list(r) for r in w.matrix.rows],
            "file": witness_text(w, M.names(M.ground))}


def cmd_excluded_minor(args):
    M = _matroid(args)
    return {"fields": _fields(args.fields), "excluded_minor": is_excluded_minor(M, _fields(args.fields))}


def cmd_nested_count(args):
    M = _matroid(args)
    if args.report:
        return {"fields": _fields(args.fields),
                "rows": theorem_report(M, _fields(args.fields), tuple(range(1, args.k + 1)))}
    return {"k": args.k, "count": max_nested_kseps(M, args.k)}


def cmd_branchwidth(args):
    M = _matroid(args)
    bw, T = branch_width(M, tree=True)
    return {"branch_width": bw, "tree": T.to_string(M) if T is not None else None}


def cmd_pg_flats(args):
    out = {"k": args.k, "q": args.q, "count": count_flats(args.k, args.q),
           "bound": str(Tower(args.q, args.k, args.k)),
           "holds": flats_bound_holds(args.k, args.q)}
    if args.list:
        out["flats"] = [F.encode() for F in enumerate_flats(args.k, args.q)]
    return out


def cmd_tower(args):
    t = Tower(*args.args)
    out = {"args": list(t.args), "value": str(t), "exact_decimal": not t.huge}
    if t.huge:
        out["approx_digits"] = t.digits()
    return out


def cmd_verify(args):
    kw = {}
    if args.max_n is not None:
        kw["max_n"] = args.max_n
    if args.seed is not None:
        kw["seed"] = args.seed
    if args.count is not None:
        kw["random_count"] = args.count
    rep = verify_mod.verify(args.lemma, **kw)
    return rep.as_dict(), 0 if rep.ok else 1


# ------------------------------------------------------------------ plumbing


def _needs_matroid(p):
    p.add_argument("--matroid", "-m", help="matroid text file")
    p.add_argument("--named", help=f"named matroid: {', '.join(corpus.NAMED)}")


def build_parser():
    ap = argparse.ArgumentParser(prog="nestsep", description=__doc__.splitlines()[0])
    ap.add_argument("--format", choices=("json", "text"), default="json")
    sub = ap.add_subparsers(dest="command", required=True)

    def add(name, fn, matroid=True):
        p = sub.add_parser(name)
        if matroid:
            _needs_matroid(p)
        p.set_defaults(fn=fn)
        return p

    add("rank", cmd_rank).add_argument("--set", default="")
    add("lambda", cmd_lambda).add_argument("--set", default="")
    for name, fn in (("kappa", cmd_kappa), ("link", cmd_link)):
        p = add(name, fn)
        p.add_argument("--x", required=True)
        p.add_argument("--y", required=True)
    p = add("dissect", cmd_dissect)
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--parts", help="e.g. 'a;b,c;d' (omit to search for a longest one)")
    p = add("linked-extract", cmd_linked_extract)
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--parts", required=True)
    add("classes", cmd_classes).add_argument("--side", required=True)
    add("pi", cmd_pi).add_argument("--side", required=True)
    for name, fn in (("schemes", cmd_schemes), ("realizable", cmd_realizable)):
        p = add(name, fn)
        p.add_argument("--side", required=True)
        p.add_argument("--q", type=int, required=True)
        p.add_argument("--k", type=int, help="default: λ(side) + 1")
    p = add("compat", cmd_compat)
    p.add_argument("--side", required=True)
    p.add_argument("--q", type=int, required=True)
    add("represent", cmd_represent).add_argument("--q", type=int, required=True)
    add("excluded-minor", cmd_excluded_minor).add_argument("--fields", required=True)
    p = add("nested-count", cmd_nested_count)
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--report", action="store_true", help="compare counts for 1..k with the tower bound")
    p.add_argument("--fields", default="2")
    add("branchwidth", cmd_branchwidth)
    p = add("pg-flats", cmd_pg_flats, matroid=False)
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--q", type=int, required=True)
    p.add_argument("--list", action="store_true")
    add("tower", cmd_tower, matroid=False).add_argument("args", type=int, nargs="+")
    p = add("verify", cmd_verify, matroid=False)
    p.add_argument("lemma", choices=sorted(verify_mod.HARNESSES))
    p.add_argument("--max-n", type=int)
    p.add_argument("--seed", type=int)
    p.add_argument("--count", type=int, help="number of seeded random matroids")
    return ap


def _text(obj, indent=0):
    pad = " " * indent
    if isinstance(obj, dict):
        width = max((len(str(k)) for k in obj), default=0)
        lines = []
        for k, v in obj.items():
            if _blocky(v):
                lines.append(f"{pad}{str(k):<{width}} :")
                lines.append(_text(v, indent + 2))
            elif isinstance(v, str) and "\n" in v:
                lines.append(f"{pad}{str(k):<{width}} :")
                lines += [pad + "  " + s for s in v.rstrip("\n").splitlines()]
            else:
                lines.append(f"{pad}{str(k):<{width}} : {_flat(v)}")
        return "\n".join(lines)
    if isinstance(obj, list):
        return "\n".join(_text(x, indent) if _blocky(x) else pad + _flat(x) for x in obj)
    return pad + _flat(obj)


def _blocky(v):
    """Dicts, and lists holding dicts, get their own indented block."""
    if isinstance(v, dict):
        return bool(v)
    return isinstance(v, list) and any(isinstance(x, dict) for x in v)


def _flat(v):
    if isinstance(v, list):
        return "[" + ", ".join(_flat(x) for x in v) + "]"
    if isinstance(v, dict):
        return "{" + ", ".join(f"{k}: {_flat(x)}" for k, x in v.items()) + "}"
    if isinstance(v, bool):
        return str(v).lower()
    return str(v)


def main(argv=None):
    args = build_parser().parse_args(argv)
    try:
        res = args.fn(args)
    except MatroidError as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 2
    except (OSError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    code = 0
    if isinstance(res, tuple):
        res, code = res
    if args.format == "json":
        print(json.dumps(res, separators=(",", ":")))
    else:
        print(_text(res))
    return code


if __name__ == "__main__":
    sys.exit(main())
