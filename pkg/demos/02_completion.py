# %% [markdown]
# # Normal forms of transposition words
#
# Up to Hurwitz moves, a word of transpositions is determined by three
# things: its product, the blocks its letters connect, and how many letters
# fall in each block.  The triple is what the completion monoid stores.

# %%
from hurlab.completion import (
    canonical_factorization,
    completion_norm,
    make_kld_g,
    make_klud_g,
    multiply,
    normal_form,
    stab_degree,
    stab_genus,
    totmon_e_prime,
)
from hurlab.pmq_core import transposition

d = 5
word = [transposition(d, 1, 2), transposition(d, 2, 3), transposition(d, 1, 2), transposition(d, 4, 5)]
x = normal_form(word)
print("word       :", [t.cycle_string() for t in word])
print("normal form:", x)

# %% [markdown]
# Not every triple occurs.  A block of size b whose product has norm N needs
# at least 2b - 2 - N letters, with matching parity.  The canonical word
# below rebuilds any valid triple.

# %%
print("canonical word:", [t.cycle_string() for t in canonical_factorization(x)])
print("round trip ok :", normal_form(canonical_factorization(x)) == x)

# %% [markdown]
# The elements that classify moduli of curves with a pole of order d have
# the long cycle as monodromy, one block, and d - 1 + 2g letters.  Adding a
# handle or a sheet moves between them.

# %%
k = make_kld_g(0, 2)
for _ in range(3):
    k = stab_degree(k)
k = stab_genus(stab_genus(k))
print("stab_genus^2 stab_degree^3 (k^2_0) =", k, "=", make_kld_g(2, 5))
print("several poles, g=1, orders (3,2):", make_klud_g(1, [3, 2]), "norm", completion_norm(make_klud_g(1, [3, 2])))

# %% [markdown]
# Multiplying by e' (every adjacent transposition twice) merges everything
# into one block.

# %%
sq = multiply(normal_form([transposition(d, 1, 2)] * 2), normal_form([transposition(d, 4, 5)] * 4))
print(sq, "* e' =", multiply(sq, totmon_e_prime(d)))
