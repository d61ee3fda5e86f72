"""
A surface in characteristic 2 whose order hides
================================================

The hypersurface Z^2 + Y^7 + Y X^4 over GF(2) has order 2 at the origin, yet
the first derivative in Z vanishes identically. Eliminating Z shows how deep
the singularity really is.
"""

from reeselim import (
    GF, BasicObject, ReesAlg, Ring, blowup_chart, commute_elimination,
    diff_closure, eliminate_chain, ord_dm, t_fn, tau_at, w_ord,
)

R = Ring(["X", "Y", "Z"], GF(2))
G = ReesAlg(R, [(R("Z^2+Y^7+Y*X^4"), 2)])

# %%
# The closure picks up the X-derivative of weight 1, (Y^3+X^2)^2.
D = diff_closure(G)
print(D)
print("tau at the origin:", tau_at(D, R.origin()))

# %%
# One step of elimination along Z; the weight-1 generator survives and has
# order 4 at the origin.
chain = eliminate_chain(D, R.origin(), ("Z",))
print(chain.dumps())
print("ord after eliminating Z:", ord_dm(G, R.origin(), 1))

# %%
# Blow up the origin and read the Y-chart upstairs and downstairs.
B = BasicObject.create(D)
up, down = commute_elimination(B, chain, ("X", "Y", "Z"), "Y")
print(up.describe())
print(down.describe())
print("w-ord downstairs:", w_ord(down, (0, 0)), " t:", t_fn(down, (0, 0)))

# %%
# The X-chart of the same blow-up, for comparison.
print(blowup_chart(B, ("X", "Y", "Z"), "X").describe())
