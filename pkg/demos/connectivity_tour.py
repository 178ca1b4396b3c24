# %% [markdown]
# Connectivity on small matroids: λ, κ, linking sets and dissections.

# %%
import numpy as np

from nestsep import corpus
from nestsep.connectivity import kappa, kappa_table, lam, lambda_table, local_conn, tutte_link
from nestsep.dissection import extract_linked, find_longest_dissection, is_linked, validate

# %%
# Four points on a line.  λ of a set is how much its span overlaps the rest.
M = corpus.u24()
for names in (["a"], ["a", "b"], ["a", "b", "c"]):
    X = M.mask(names)
    print(names, "λ =", lam(M, X))

# %%
# The whole λ table at once; it is symmetric under complement
T = lambda_table(M)
idx = np.arange(1 << M.n)
print(T)
print("symmetric:", bool((T == T[M.ground & ~idx]).all()))

# %%
# κ(X, Y) is the least λ over sets sitting between X and E - Y
F = corpus.fano()
X, Y = F.mask(["1"]), F.mask(["23"])
value, Z = kappa(F, X, Y)
print("κ =", value, "witness", F.names(Z))

# %%
# Tutte linking: contract an independent C so that ⊓ reaches κ exactly
C = tutte_link(F, X, Y)
print("C =", F.names(C), " ⊓ before", local_conn(F, X, Y), " after", local_conn(F.contract(C), X, Y))

# %%
# κ over every disjoint pair at once (rows X, columns Y, local masks)
K = kappa_table(corpus.u24())
print(K[0b0001, 0b1000], K[0b0011, 0b1100])

# %%
# A longest 0-dissection of a path graph splits off one edge at a time
P = corpus.path_graph(6)
D = find_longest_dissection(P, 0)
print(D.names(P), "length", D.length)

# %%
# From a 1-dissection of a long cycle we pull out a linked one of length 2
Cy = corpus.cycle_graph(7)
D1 = validate(Cy, [1 << i for i in range(Cy.n)], 1)
out = extract_linked(Cy, D1, 2)
print(out.names(Cy), "k =", out.k, "linked:", is_linked(Cy, out))
