# %% [markdown]
# # Monodromy of a polynomial
#
# A monic polynomial of degree d is a d-sheeted branched cover of the
# plane.  Going once around each critical value permutes the sheets.  We
# track the roots of f(z) = w numerically along loops that start far below
# all critical values.

# %%
import numpy as np

from hurlab.moduli_dims import euler_check
from hurlab.poly_monodromy import MonicPolynomial, monodromy, rescale_into_rectangle

f = MonicPolynomial([0, -3, 0])  # z^3 - 3z
cfg = monodromy(f)
for b in cfg.branch_points:
    print(f"critical value {b.location:+.6f}: {b.monodromy.cycle_string()}")
print("ordered product:", cfg.ordered_product().cycle_string(), " genus:", cfg.genus)

# %% [markdown]
# The same holds for random polynomials.  The norms of the local monodromies
# always add to d - 1, and their ordered product is the long cycle.

# %%
rng = np.random.default_rng(2024)
for d in range(3, 7):
    c = rng.standard_normal(d) + 1j * rng.standard_normal(d)
    cfg = monodromy(MonicPolynomial(c))
    norms = [s.norm() for s in cfg.monodromies]
    print(f"d={d}: {len(norms)} branch points, norms {norms},"
          f" product {cfg.ordered_product().cycle_string()}, chi = {euler_check(cfg).chi_branch}")

# %% [markdown]
# Rescaling z by t and shifting w moves every critical value into the unit
# square without changing the cycle types.

# %%
g = MonicPolynomial([5, -30, 2j, 1])
res = rescale_into_rectangle(g)
print("t =", round(res.t, 6), " shift =", res.shift)
print("before:", sorted(s.cycle_string() for s in monodromy(g).monodromies))
print("after :", sorted(s.cycle_string() for s in monodromy(res.poly).monodromies))
