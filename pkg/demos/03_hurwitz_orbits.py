# %% [markdown]
# # Counting Hurwitz orbits
#
# Braid moves permute transposition tuples and keep the product fixed.  The
# orbits are the connected components of a Hurwitz space.  For small
# degrees we can list every tuple and check that each orbit is exactly one
# fiber of the normal form.

# %%
from collections import Counter

from hurlab.braid_orbits import classify_components, hurwitz_condition
from hurlab.pmq_core import all_permutations

for d, k in [(3, 2), (3, 4), (4, 4), (4, 5)]:
    rep = classify_components(d, k)
    sizes = Counter(size for _, size, _ in rep.orbits)
    print(f"d={d} k={k}: {rep.enumerated} tuples, {rep.orbit_count} orbits,"
          f" fibers match: {rep.fibers_match()}, orbit sizes {dict(sorted(sizes.items()))}")

# %% [markdown]
# Transitive tuples with product sigma exist exactly when
# k - (2d - 2 - N(sigma)) is even and non-negative, and then they form one orbit.

# %%
d, k = 4, 5
counts = classify_components(d, k).transitive_counts()
for sigma in sorted(all_permutations(d), key=lambda s: (s.norm(), s.image0)):
    if sigma.norm() % 2 == k % 2:
        print(f"  {sigma.cycle_string():>12}: {counts.get(sigma, 0)} orbit(s), condition {hurwitz_condition(d, k, sigma)}")
