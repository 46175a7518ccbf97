# %% [markdown]
# # Primes q where f(q) has a large prime factor
#
# Fraction of q < x with P+(f(q)) > q^e, swept over e.

# %%
import numpy as np

from polylcm import Polynomial, build_factor_table, greatest_prime_divisor_stats

# %%
table = build_factor_table(Polynomial((1, 0, 1)), 10**5)

# %%
for e in np.linspace(0.5, 1.9, 8):
    st = greatest_prime_divisor_stats(table, float(e))
    print(f"e={e:.2f}  fraction={st.fraction:.4f}")

# %%
st = greatest_prime_divisor_stats(table, 0.847)
print(st.N, st.total, st.fraction)
