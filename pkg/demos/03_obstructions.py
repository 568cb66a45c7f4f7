# %% [markdown]
# # Certificates of non-realizability
#
# Three incidence structures that no polytope (or no rational polytope)
# has, each with a verdict backed by a re-checkable certificate.

# %%
import time

from polyslack import ScalingFix, fix_variables_by_scaling, rationality_probe, realizability_probe
from polyslack.formats import load_fixture, polytope_from_json


def show(name, report, t0):
    print(f"{name}: {report.verdict}  [{time.perf_counter() - t0:.1f} s]")
    for c in report.certificate:
        print("   certificate:", c)


# %% [markdown]
# The tetrahemihexahedron's face structure has slack matrices of the right
# rank, but its slack ideal contains a polynomial with only positive
# coefficients, so no positive zero exists.

# %%
t0 = time.perf_counter()
show("tetrahemihexahedron", realizability_probe(polytope_from_json(load_fixture("tetrahemihexahedron"))), t0)

# %% [markdown]
# A simplicial 3-sphere with 8 vertices: its slack ideal is the unit ideal.
# Fixing a spanning forest of entries to 1 first keeps this quick.

# %%
sphere = polytope_from_json(load_fixture("altshuler_steinberg"))
t0 = time.perf_counter()
show("3-sphere", realizability_probe(sphere, fix_variables_by_scaling(sphere)), t0)

# %% [markdown]
# A configuration of 9 points and 9 lines that is realizable, but only with
# irrational coordinates: some variable satisfies x^2 + x - 1 = 0.

# %%
cf = load_fixture("point_line_configuration")
t0 = time.perf_counter()
rep = rationality_probe(polytope_from_json(cf), ScalingFix("projective", frozenset(cf["fixed"])))
show("point-line configuration", rep, t0)
