# %% [markdown]
# # A face that cannot be prescribed
#
# The prism over a square pyramid has a cube as a facet.  Eliminating all
# other variables from its slack ideal leaves an ideal of smaller dimension
# than the cube's own slack ideal: not every cube extends.  Substituting one
# particular cube and eliminating the remaining free variables gives the
# unit ideal, which shows that this cube extends to no prism.
#
# Runs for a minute or so.

# %%
from fractions import Fraction
import time

from polyslack import prescribability_probe
from polyslack.formats import load_fixture, polytope_from_json

pf = load_fixture("prism_square_pyramid")
prism = polytope_from_json(pf)
subs = {v: Fraction(1) for v in pf["face_scaling"]}
subs.update({int(k): Fraction(v) for k, v in pf["chain"].items()})

t0 = time.perf_counter()
rep = prescribability_probe(prism, [r - 1 for r in pf["face_rows"]], [c - 1 for c in pf["face_cols"]], 3,
                            substitutions=subs, chain_eliminate=pf["chain_eliminate"])
print(rep.verdict, f"[{time.perf_counter() - t0:.1f} s]")
for key in ("dim_elimination", "dim_face", "containment", "chain_trivial", "face_chain_trivial"):
    print(f"{key:>18}: {rep.details[key]}")
