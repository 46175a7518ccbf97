# %% [markdown]
# # The exponent table
#
# For each degree d the bound integral of C(theta) over [1/2, delta] has to
# stay below d - 1/2. The largest admissible delta is 1 - eps(d).

# %%
from polylcm import default_schedule, epsilon_of_degree, integrate_c, main_bound_coefficient, solve_delta
from polylcm.analytic import table1, truncate

# %%
for d in range(1, 9):
    paper = solve_delta(d, "paper")
    exact = solve_delta(d, "exact")
    print(f"d={d}  1-eps={truncate(1 - epsilon_of_degree(d)):.4f}  paper={paper:.6f}  exact={exact:.8f}")

# %% [markdown]
# Quadratics use the Wu-Xi family. At delta = 0.847 the integral sits just
# under 3/2, so the main coefficient is barely positive.

# %%
s = default_schedule(2)
print(integrate_c(s, 0.5, 0.847), integrate_c(s, 0.5, 0.847, "quadrature"))
print(main_bound_coefficient(2, 0.847))

# %%
print(table1("exact"))
