# %% [markdown]
# # Dimensions and stable cohomology
#
# Closed formulas give the dimensions of the spaces of functions in play.
# The class counts of the permutation quandle stabilize to the partition
# numbers, which are the dimensions of a polynomial ring with one generator
# in each even degree.

# %%
from hurlab.cohomology import dim_table, stabilization_map, stable_dim
from hurlab.completion import completion_norm, make_klud_g
from hurlab.moduli_dims import SurfaceData, dims

for g, d_vec in [(0, (5,)), (1, (2,)), (2, (2,)), (2, (4, 1))]:
    s = SurfaceData(g, d_vec)
    rec = dims(s)
    print(f"g={g} poles={d_vec}: h={s.h} (completion norm {completion_norm(make_klud_g(g, d_vec))}),"
          f" total real dim {rec.ccO_total_real}, fibre {rec.ccO_fiber_complex}"
          f"{'' if rec.ccO_fiber_valid else ' (outside the stable range)'}")

# %%
print("\nm   :", list(range(8)))
print("p(m):", [stable_dim(m) for m in range(8)])
for d in (4, 8, 12, 16):
    t = dim_table(d, 7)
    print(f"d={d:2d}:", [t.dims[m] for m in range(8)])

# %% [markdown]
# Going from d + 1 to d points keeps the classes that still fit.  In degree
# 2m with 2m <= d nothing is lost.

# %%
print(stabilization_map(4, 3))
print(stabilization_map(6, 3))
