# %% [markdown]
# # Slack matrices
#
# A polytope given by vertices and facet inequalities has a slack matrix:
# entry (i, j) is how far vertex i is from facet j.  Everything below is
# exact rational arithmetic.

# %%
from fractions import Fraction

from polyslack import IncidenceStructure, VRepresentation, check_slack_conditions, enumerate_facets, slack_matrix
from polyslack.exactmath import format_rational
from polyslack.formats import hrep_from_json, load_fixture, matrix_from_json, polytope_from_json
from polyslack.polytope import affinely_equivalent, normalize_s1, realize_from_slack

sq = load_fixture("unit_square")
square = polytope_from_json(sq)
h, inc = enumerate_facets(square)
print(slack_matrix(square, h))

# %% [markdown]
# Facets were found from the vertices alone.  With the inequalities written
# by hand (columns of the slack factor) we get the matrix in its usual order.
# A projectively moved copy of the square, with its own inequalities, has
# exactly the same slack matrix.

# %%
s = slack_matrix(square, hrep_from_json(sq))
img = {"dimension": 2, **sq["image"]}
s2 = slack_matrix(polytope_from_json(img), hrep_from_json(img))
print(s)
print("same matrix for the image:", s == s2)

# %% [markdown]
# Moving an interior point to the origin and scaling every right-hand side
# to 1 gives the normalized matrix; here it is twice the one above.

# %%
print(normalize_s1(polytope_from_json(img), hrep_from_json(img), [0, 0]))

# %% [markdown]
# Any nonnegative matrix with the right zero pattern, rank d+1 and the ones
# vector in its column span is a slack matrix of some realization.  Its rows
# are the vertices of that realization, up to an affine map.

# %%
other = matrix_from_json(sq["other_slack_matrix"])
print(check_slack_conditions(other, IncidenceStructure.from_support(2, other)))
q = realize_from_slack(other)
print([tuple(format_rational(x) for x in p) for p in q.vertices])
target = VRepresentation([[Fraction(x) for x in p] for p in sq["other_vertices"]])
print("affinely equivalent to the listed quadrilateral:", affinely_equivalent(q, target))
