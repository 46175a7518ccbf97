# %% [markdown]
# # Mertens-type sum for rho(p)
#
# S(x) - log x settles down slowly; the last value is only an empirical
# estimate of the limiting constant.

# %%
from polylcm import Polynomial, drift_series, root_count_vs_li

# %%
for f in (Polynomial((1, 0, 1)), Polynomial((-2, 0, 0, 1))):
    s = drift_series(f, [10**k for k in range(2, 8)])
    print(f)
    for c in s.checkpoints:
        print(f"  x={c.x:>9}  S={c.S:.6f}  drift={c.drift:+.6f}")
    print("  deltas", [f"{d:+.2e}" for d in s.deltas()])

# %%
r = root_count_vs_li(Polynomial((1, 0, 1)), 10**6)
print(r.sum_rho, r.li, r.ratio)
