# %% [markdown]
# # Growth of lcm{f(p) : p < x}
#
# One factor table at the largest x gives log Q, log L and log rad L at every
# smaller checkpoint.

# %%
import numpy as np

from polylcm import Polynomial, build_factor_table, log_L, log_Q, log_rad_L
from polylcm.valuations import restrict

# %%
f = Polynomial((1, 0, 1))
table = build_factor_table(f, 10**5)

# %%
xs = np.logspace(2, 5, 7).astype(int)
for x in xs:
    t = restrict(table, int(x))
    print(f"x={x:>7}  log Q/x={log_Q(t) / x:.4f}  log L/x={log_L(t) / x:.4f}  log rad L/x={log_rad_L(t) / x:.4f}")

# %% [markdown]
# Over all integers n < x instead of primes, for comparison.

# %%
ti = build_factor_table(f, 10**4, arguments="integers")
print(log_L(ti) / 10**4, log_L(restrict(table, 10**4)) / 10**4)
