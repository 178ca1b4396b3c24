"""Acceptance criteria 1-12, each at its stated scale and time budget.

Every test records one ``criterion N: PASS|FAIL ...`` line; the lines are
printed in the pytest terminal summary and when this file is run directly.
"""

import io
import json
import time
from contextlib import redirect_stdout

import pytest

from conftest import ACCEPTANCE
from nestsep import corpus
from nestsep import verify as v
from nestsep.branchwidth import branch_width, nested_from_path, width
from nestsep.cli import main
from nestsep.connectivity import is_k_separation
from nestsep.representation import (is_excluded_minor, is_representable, max_nested_kseps,
                                    theorem_report)
from nestsep.schemes import compatible_pair, majic_check

pytestmark = pytest.mark.slow


def record(n, ok, detail):
    line = f"criterion {n:>2}: {'PASS' if ok else 'FAIL'}  {detail}"
    ACCEPTANCE[n] = line
    print(line)
    assert ok, line


def summary(rep):
    return f"{rep.instances} instances, {rep.failures} failures, {rep.seconds:.1f}s"


def test_criterion_01_rank_axioms_submodularity():
    rep = v.verify("submodularity", max_n=8, random_count=500, seed=0, random_max_n=12)
    record(1, rep.ok and rep.seconds < 60, summary(rep) + " (budget 60s)")


def test_criterion_02_contraction_identity():
    rep = v.verify("contraction", max_n=8)
    record(2, rep.ok, summary(rep))


def test_criterion_03_tutte_linking():
    rep = v.verify("linking", random_count=100, seed=0, max_n=9, random_c=1000)
    ok = rep.ok and rep.notes["random_C_instances"] == 1000 and rep.seconds < 300
    record(3, ok, summary(rep) + f", random C: {rep.notes['random_C_instances']} (budget 300s)")


def test_criterion_04_seq():
    rep = v.verify("seq", max_n=8)
    record(4, rep.ok and rep.instances > 0, summary(rep))


def test_criterion_05_linked_extraction():
    inputs = v.linked_inputs(50, seed=0)
    shape = all(D.k <= 2 and n <= 3 and D.length >= n ** (D.k + 1) for _, _, D, n in inputs)
    rep = v.verify("linked", count=50, seed=0)
    record(5, rep.ok and rep.instances == 50 and shape, summary(rep))


def test_criterion_06_classes1():
    rep = v.verify("classes1", seed=0)
    record(6, rep.ok, summary(rep) + f", fingerprint checks {rep.notes['fingerprint_checks']}")


def test_criterion_07_classes2():
    rep = v.verify("classes2", max_n=7)
    refined = v.verify("classes2-refined", max_n=7)
    detail = summary(rep)
    if rep.counterexample:
        cx = rep.counterexample
        detail += f"; e.g. A={cx['A']} e={cx['e']} in {cx['matroid'].splitlines()[-3:]}"
    detail += f"; refined form: {refined.failures} failures"
    record(7, rep.ok, detail)


def test_criterion_08_majic():
    start = time.perf_counter()
    rep = v.verify("majic")
    u24 = corpus.u24()
    A = u24.mask(["a", "b"])
    gf2 = (is_representable(u24, 2) is not None, compatible_pair(u24, A, 2) is not None)
    gf3 = (is_representable(u24, 3) is not None, compatible_pair(u24, A, 3) is not None)
    exact = gf2 == (False, False) and gf3 == (True, True)
    exact = exact and majic_check(u24, A, 2) is False and majic_check(u24, A, 3) is True
    took = time.perf_counter() - start
    record(8, rep.ok and exact and took < 600,
           summary(rep) + f"; U24 GF(2) {gf2}, GF(3) {gf3}; total {took:.1f}s (budget 600s)")


def test_criterion_09_excluded_minors():
    vals = (is_excluded_minor(corpus.u24(), [2]),
            is_excluded_minor(corpus.fano(), [3]),
            is_excluded_minor(corpus.fano(), [2]))
    record(9, vals == (True, True, False), f"U24/GF2, F7/GF3, F7/GF2 -> {vals}")


def test_criterion_10_2seps():
    rep = v.verify("2seps")
    exact = max_nested_kseps(corpus.u24(), 2)
    record(10, rep.ok and exact == 2, summary(rep) + f"; counts {rep.notes}; U24 exact {exact}")


def test_criterion_11_branchwidth_flats_leafbound():
    start = time.perf_counter()
    vals = {name: branch_width(corpus.named(name)) for name in ("U24", "F7")}
    free = [branch_width(corpus.free(n)) for n in range(2, 9)]
    tiny = [branch_width(corpus.free(n)) for n in (0, 1)]
    ok = vals == {"U24": 3, "F7": 3} and free == [1] * 7 and tiny == [0, 1]
    # every leaf-to-leaf path of an optimal tree gives strictly nested separations
    for name in ("U24", "F7", "M(K4)"):
        M = corpus.named(name)
        bw, T = branch_width(M, tree=True)
        ok = ok and width(M, T) == bw
        for s in T.leaves():
            for path in _paths_from(T, s):
                seps = nested_from_path(M, T, path)
                ok = ok and all(is_k_separation(M, x.A, bw) for x in seps)
                ok = ok and all(a.A & ~b.A == 0 and a.A != b.A for a, b in zip(seps, seps[1:]))
    bwrep = v.verify("branchwidth")
    flats = v.verify("flats", max_points=2 ** 16)
    leaves = v.verify("leafbound", max_leaves=14)
    took = time.perf_counter() - start
    ok = ok and bwrep.ok and flats.ok and leaves.ok and took < 600
    record(11, ok, f"bw {vals}, free {free[0]}, |M|<=1 {tiny}; branchwidth {summary(bwrep)}; "
                   f"flats {summary(flats)}; leafbound {summary(leaves)}; total {took:.1f}s")


def test_criterion_12_tower_and_report():
    buf = io.StringIO()
    with redirect_stdout(buf):
        codes = [main(["tower", "2", "5", "4", "4"]), main(["tower", "2", "3", "2"]),
                 main(["tower", "2", "2", "2", "2"])]
    outs = [json.loads(line) for line in buf.getvalue().splitlines()]
    ok = codes == [0, 0, 0]
    ok = ok and outs[0]["value"] == f"2^{5 ** 256}"
    ok = ok and outs[1]["value"] == "512" and outs[2]["value"] == "65536"
    rows = []
    for name, fam in v.EXCLUDED:
        M = corpus.named(name)
        ok = ok and is_excluded_minor(M, fam)
        for r in theorem_report(M, fam):
            rows.append(r)
            ok = ok and r["below"]
    record(12, ok, f"tower(2,5,4,4) = 2^{{5^256}} printed exactly; "
                   f"{len(rows)} report rows over {len(v.EXCLUDED)} excluded minors, all below")


def _paths_from(T, s):
    """All simple paths (as edge lists) starting at vertex s."""
    out = []
    stack = [(s, None, [])]
    while stack:
        u, p, edges = stack.pop()
        if edges:
            out.append(edges)
        for w in T.adj[u]:
            if w != p:
                stack.append((w, u, edges + [(u, w)]))
    return out


if __name__ == "__main__":
    raise SystemExit(pytest.main([__file__, "-q", "-p", "no:cacheprovider"]))
