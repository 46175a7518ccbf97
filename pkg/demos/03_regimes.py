# %% [markdown]
# # Splitting log Q(x) by the size of the prime
#
# Small primes below x_b = sqrt(x) (log x)^-B, medium up to sqrt(x), large up
# to x^delta and very large beyond.

# %%
from polylcm import Polynomial, build_factor_table, decompose, log_Q
from polylcm.mertens import lambda_weighted_varsigma_sum

# %%
f = Polynomial((1, 0, 1))
x = 10**5
table = build_factor_table(f, x)

# %%
for B in (0.0, 1.0, 2.0):
    dec = decompose(table, B, 0.847)
    shares = [v / log_Q(table) for v in dec.as_tuple()]
    print(f"B={B}  x_b={dec.x_b:8.2f}  shares={[round(s, 4) for s in shares]}")

# %% [markdown]
# The small part, recounted through prime powers: sum of varsigma(m) Lambda(m)
# over m < x_b. It misses only the powers of small primes that reach past x_b.

# %%
dec = decompose(table, 1.0, 0.847)
print(dec.small, lambda_weighted_varsigma_sum(f, x, dec.x_b))
