"""
Stratifying a double cusp
=========================

z^2 + (x^2 - y^3)^2 over the rationals is singular along the cusp curve
x^2 = y^3 in the plane z = 0. The stratifying tuple singles out the origin.
"""

from reeselim import QQ, ReesAlg, Ring, diff_closure, format_table, format_value, gamma, probe_grid
from reeselim import stratification_report
from reeselim.transform import Chart, pair_transform

R = Ring(["x", "y", "z"], QQ)
G = ReesAlg(R, [(R("z^2+(x^2-y^3)^2"), 2)])

# %%
# Rows for every singular point on a small integer grid.
rows = stratification_report(diff_closure(G), probe_grid(R, range(-2, 3)))
print(format_table(rows))

# %%
# Points (t^3, t^2, 0) of the curve all share one value.
for t in (1, 2, 3):
    print((t ** 3, t ** 2, 0), format_value(gamma(G, (t ** 3, t ** 2, 0))))

# %%
# Blowing up the origin: the y-chart is the interesting one.
f = G.gens[0][0]
f1 = pair_transform(f, 2, Chart(("x", "y", "z"), "y"))
print("y-chart:", f1)
for v in "xyz":
    print(f"second blow-up, {v}-chart:", pair_transform(f1, 2, Chart(("x", "y", "z"), v)))
