# %% [markdown]
# Equivalence classes, schemes, and what they say about representability.

# %%
from nestsep import corpus
from nestsep.classes import partition, pi_table
from nestsep.representation import is_excluded_minor, is_representable
from nestsep.schemes import compatible_pair, realizable_schemes, replay_witness

M = corpus.u24()
A = M.mask(["a", "b"])

# %%
# Subsets of A that look the same from the other side share a class
P = partition(M, A)
print(P.count, "classes:", P.as_dict(M))

# %%
# π gives the local connectivity between classes on the two sides
print(pi_table(M, A).values)

# %%
# Realizable schemes over GF(2) and GF(3), with extension matrices that replay
for q in (2, 3):
    found = realizable_schemes(M, A, 3, q, witnesses=True)
    replayed = all(replay_witness(M, s, w) for s, w in found.items())
    print(f"GF({q}): {len(found)} schemes, all witnesses replay: {replayed}")

# %%
# A compatible pair exists exactly when U(2,4) is representable
for q in (2, 3):
    pair = compatible_pair(M, A, q)
    print(f"GF({q}): compatible pair {'found' if pair else 'none'};",
          "representable:", is_representable(M, q) is not None)

# %%
# A representation over GF(3), as a matrix
w = is_representable(M, 3)
print(w.matrix.rows)

# %%
# Excluded minors for a few small fields
for name, fam in [("U24", [2]), ("F7", [3]), ("F7", [2]), ("F7-", [2])]:
    print(name, fam, is_excluded_minor(corpus.named(name), fam))
