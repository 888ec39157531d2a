# %% [markdown]
# # Permutations as a partially multiplicative quandle
#
# A permutation's norm is the fewest transpositions that multiply to it.
# Two permutations may be multiplied inside the quandle only when their
# norms add up.

# %%
from hurlab.pmq_core import Permutation, long_cycle, partial_product, transposition

a = Permutation.parse("(1 2)", 4)
b = Permutation.parse("(2 3 4)", 4)
print("a =", a.cycle_string(), " N(a) =", a.norm())
print("b =", b.cycle_string(), " N(b) =", b.norm())

# %% [markdown]
# Products act right to left, so `a * b` applies `b` first.  Here the norms
# add, so the pair is geodesic and the partial product is defined.

# %%
ab = partial_product(a, b)
print("a*b =", ab.cycle_string(), " N =", ab.norm())
print("a*a geodesic?", partial_product(a, a) is not None)

# %% [markdown]
# Multiplying adjacent transpositions in order gives the long cycle, and
# conjugating by the long cycle shifts each adjacent transposition down by one.

# %%
d = 6
acc = Permutation.identity(d)
for j in range(1, d):
    acc = acc * transposition(d, j, j + 1)
print("(1 2)(2 3)...(5 6) =", acc.cycle_string(), "== lc_6:", acc == long_cycle(d))
for j in range(1, d - 1):
    moved = transposition(d, j + 1, j + 2).conjugate(long_cycle(d))
    print(f"  ({j + 1} {j + 2}) conjugated by lc_6 -> {moved.cycle_string()}")
