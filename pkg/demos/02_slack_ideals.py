# %% [markdown]
# # Slack ideals of a quadrilateral
#
# Replace every nonzero entry of the slack matrix by a variable.  The
# (d+2)-minors, saturated by the product of all variables, generate the
# slack ideal; its positive zeros are exactly the slack matrices of
# realizations, up to row and column scaling.

# %%
from fractions import Fraction
import random

from polyslack import (
    RationalMatrix,
    ScalingFix,
    SymbolicSlackMatrix,
    affine_slack_ideal,
    check_slack_conditions,
    evaluate_on_variety,
    fix_variables_by_scaling,
    row_scale_to_true,
    slack_ideal,
)
from polyslack.formats import load_fixture, polytope_from_json

qf = load_fixture("quadrilateral")
quad = polytope_from_json(qf)
m = SymbolicSlackMatrix(quad)
for row in m.to_strings():
    print(" ".join(f"{e:>3}" for e in row))

# %%
print("I_P:", slack_ideal(quad).strings())
print("affine:", affine_slack_ideal(quad).strings())

# %% [markdown]
# A point on the slack variety need not be a slack matrix: it can fail the
# ones-in-column-span condition.  Dividing every row by its sum repairs it.

# %%
pt = [Fraction(x) for x in qf["point"]]
s = RationalMatrix.from_rows(m.point_matrix(pt))
print("on I_P:", evaluate_on_variety(slack_ideal(quad), pt))
print("on the affine ideal:", evaluate_on_variety(affine_slack_ideal(quad), pt))
print(check_slack_conditions(s, quad))
print(check_slack_conditions(row_scale_to_true(s), quad))

# %% [markdown]
# Scalings can set a spanning forest of entries to 1.  For the projective
# ideal that leaves one point; with column scalings only, a two-parameter
# family remains.

# %%
proj = fix_variables_by_scaling(quad)
print(sorted(proj.fixed), slack_ideal(quad, proj).strings())
aff = ScalingFix("affine", frozenset({1, 2, 5, 6}))
scaled = affine_slack_ideal(quad, aff)
print(scaled.strings())

rng = random.Random(0)
for _ in range(3):
    x3, x4 = Fraction(rng.randint(1, 9), 2), Fraction(rng.randint(1, 9), 3)
    d = x3 + x4 - 1
    p = [1, 1, x3, x4, 1, 1, x4 / d, x3 / d]
    print(x3, x4, evaluate_on_variety(scaled, p))
