"""
Eliminating in either order
===========================

For z^2 + w^2 + x^3 y^3 both z and w are transversal at every singular
point. The order of the elimination algebra does not care which one goes
first.
"""

from collections import Counter

from reeselim import (
    QQ, ReesAlg, Ring, admissible_orders, diff_closure, ord_dm, singular_probes,
)

R = Ring(["w", "x", "y", "z"], QQ)
D = diff_closure(ReesAlg(R, [(R("z^2+w^2+x^3*y^3"), 2)]))
points = singular_probes(D, range(-3, 4))
print(len(points), "singular probe points")

# %%
# Tabulate ord_dm over all admissible orders at each level.
for m in (1, 2):
    seen = Counter()
    for x in points:
        values = {order: ord_dm(D, x, m, order) for order in admissible_orders(D, x, m)}
        seen[len(set(values.values()))] += 1
    print(f"level {m}: distinct values per point -> {dict(seen)}")

# %%
# The origin stands out once two variables are gone.
print({order: ord_dm(D, R.origin(), 2, order) for order in admissible_orders(D, R.origin(), 2)})
