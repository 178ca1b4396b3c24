# %% [markdown]
# Deleting and contracting one element need not recover P(M, A) by intersection.

# %%
from nestsep.classes import classes2_counterexample, classes2_refined_check, partition
from nestsep.matroid import LinearMatroid
from nestsep.verify import verify

# %%
# two parallel elements; A is one of them, e the other
M = LinearMatroid.from_rows([[1, 1]], 2)
A, e = 0b01, 1
print("P(M, A)  ", partition(M, A).as_dict(M))
print("P(M\\e, A)", partition(M.delete(1 << e), A).as_dict(M))
print("P(M/e, A)", partition(M.contract(1 << e), A).as_dict(M))

# %%
# ∅ and {e0} are split in M but merged in both minors
print(classes2_counterexample(M, A, e))

# %%
# adding "is e spanned by X" as a third partition repairs it
print(classes2_refined_check(M, A, e))

# %%
# exhaustive check over all matroids with at most 4 elements
for lemma in ("classes2", "classes2-refined"):
    rep = verify(lemma, max_n=4)
    print(lemma, rep.instances, "instances,", rep.failures, "failures")
