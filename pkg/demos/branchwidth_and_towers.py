# %% [markdown]
# Branch-width, nested separations along tree paths, and tower-sized bounds.

# %%
from nestsep import corpus
from nestsep.branchwidth import (BranchTree, branch_width, cubic_trees, diameter,
                                 nested_from_path, width)
from nestsep.geometry import Tower, count_flats, flats_bound_holds
from nestsep.representation import theorem_report

# %%
for name in ("U24", "F7", "M(K4)", "U36"):
    bw, T = branch_width(corpus.named(name), tree=True)
    print(f"{name:6} bw = {bw}  tree {T.to_string(corpus.named(name))}")

# %%
# The displayed sets along a path of the tree grow, giving nested separations
M = corpus.u24()
T = BranchTree.parse("((a,b),(c,d))", M)
print("width", width(M, T))
a = next(v for v, e in T.leaf_of.items() if e == 0)
d = next(v for v, e in T.leaf_of.items() if e == 3)
# parent pointers from a, then read the a-d path backwards
parent, todo = {a: None}, [a]
while todo:
    u = todo.pop()
    for x in T.adj[u]:
        if x not in parent:
            parent[x] = u
            todo.append(x)
path, cur = [], d
while parent[cur] is not None:
    path.append((parent[cur], cur))
    cur = parent[cur]
path.reverse()
for s in nested_from_path(M, T, path):
    print(M.names(s.A), "|", M.names(s.B))

# %%
# Cubic trees up to 10 leaves: leaves never exceed 3^diameter
for T in cubic_trees(10)[-3:]:
    print(len(T.leaves()), "leaves, diameter", diameter(T))

# %%
# Flats of PG(k-1, q) against tower(q, k, k)
for k, q in [(2, 2), (3, 2), (3, 3), (4, 4)]:
    print(k, q, count_flats(k, q), str(Tower(q, k, k))[:20], flats_bound_holds(k, q))

# %%
# Tower bound versus actual nested-separation counts for U(2,4)
for row in theorem_report(M, [2]):
    print(row["k"], row["count"], row["tower"][:40] + ("..." if len(row["tower"]) > 40 else ""))
