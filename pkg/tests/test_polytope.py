import itertools
import random
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

import polygen
from polyslack.exactmath import RationalMatrix, in_column_span, rank
from polyslack.formats import load_fixture, matrix_from_json, polytope_from_json, hrep_from_json
from polyslack.polytope import (
    HRepresentation,
    IncidenceStructure,
    PolytopeError,
    VRepresentation,
    _is_lower_triangular,
    affinely_equivalent,
    check_slack_conditions,
    enumerate_facets,
    flag_submatrix,
    match_up_to_permutation_and_scaling,
    normalize_s1,
    realize_from_slack,
    row_scale_to_true,
    same_up_to_scaling,
    slack_matrix,
)

SQ = load_fixture("unit_square")
S_P1 = matrix_from_json(SQ["slack_matrix"])
S_OTHER = matrix_from_json(SQ["other_slack_matrix"])
QUAD = polytope_from_json(load_fixture("quadrilateral"))


def m(rows):
    return RationalMatrix.from_rows(rows)


def quad_point_matrix():
    s = load_fixture("quadrilateral")["point"]
    from polyslack.slackideal import SymbolicSlackMatrix
    return m(SymbolicSlackMatrix(QUAD).point_matrix([Fraction(x) for x in s]))


# facets


def test_unit_square_facets():
    v = polytope_from_json(SQ)
    h, inc = enumerate_facets(v)
    assert inc.num_facets == 4
    s = slack_matrix(v, h)
    assert match_up_to_permutation_and_scaling(s, S_P1, scale_rows=False) is not None


def test_segment_and_triangle():
    h, inc = enumerate_facets(VRepresentation([[0], [1]]))
    assert inc.num_facets == 2
    tri = VRepresentation([[0, 0], [1, 0], [0, 1]])
    hrep = HRepresentation([[-1, 0], [0, -1], [1, 1]], [0, 0, 1])
    s = slack_matrix(tri, hrep)
    assert sorted(s.tolists()) == sorted(RationalMatrix.identity(3).tolists())


def test_cube_facets_match_coordinate_description():
    verts = list(itertools.product([0, 1], repeat=3))
    h, inc = enumerate_facets(VRepresentation(verts))
    assert inc.num_facets == 6
    expected = {frozenset(i for i, v in enumerate(verts) if v[k] == b) for k in range(3) for b in (0, 1)}
    assert set(inc.facets()) == expected
    assert all(len(f) == 4 for f in inc.facets())


def test_facet_enumeration_errors():
    with pytest.raises(PolytopeError, match="not full-dimensional"):
        enumerate_facets(VRepresentation([[0, 0], [1, 1], [2, 2]]))
    with pytest.raises(PolytopeError, match="is not a vertex"):
        enumerate_facets(VRepresentation([[0, 0], [2, 0], [0, 2], [Fraction(1, 2), Fraction(1, 2)]]))
    with pytest.raises(PolytopeError, match="does not contain"):
        slack_matrix(VRepresentation([[0, 0], [2, 0]]), HRepresentation([[1, 0]], [1]))


# slack matrices


def test_image_polytope_gives_identical_matrix():
    img = {"dimension": 2, **SQ["image"]}
    v2, h2 = polytope_from_json(img), hrep_from_json(img)
    assert slack_matrix(v2, h2) == S_P1
    assert slack_matrix(polytope_from_json(SQ), hrep_from_json(SQ)) == S_P1


def test_normalize_s1_examples():
    img = {"dimension": 2, **SQ["image"]}
    v2, h2 = polytope_from_json(img), hrep_from_json(img)
    s1 = normalize_s1(v2, h2, [0, 0])
    assert s1 == S_P1.scale_columns([2, 2, 2, 2])
    assert normalize_s1(v2, h2) == s1  # barycenter is the origin
    # already normalized: w = 1 and the origin inside
    tri = VRepresentation([[-1, -1], [2, -1], [-1, 2]])
    htri = HRepresentation([[-1, 0], [0, -1], [1, 1]], [1, 1, 1])
    assert normalize_s1(tri, htri, [0, 0]) == slack_matrix(tri, htri)
    t1 = normalize_s1(tri, htri)
    assert len({sum(t1.row(i)) for i in range(3)}) == 1
    assert in_column_span(t1, [1, 1, 1]) and in_column_span(t1.T, [1, 1, 1])
    with pytest.raises(PolytopeError, match="not interior"):
        normalize_s1(v2, h2, [1, 2])


def test_slack_condition_examples():
    inc_other = IncidenceStructure.from_support(2, S_OTHER)
    assert check_slack_conditions(S_OTHER, inc_other).is_true_slack
    sp = quad_point_matrix()
    rep = check_slack_conditions(sp, QUAD)
    assert (rep.support_ok, rep.rank_ok, rep.ones_ok) == (True, True, False)
    zero = check_slack_conditions(RationalMatrix.zeros(4, 4), QUAD)
    assert not zero.support_ok and len(zero.support_mismatches) == 8


def test_row_scale_examples():
    sp = quad_point_matrix()
    t = row_scale_to_true(sp)
    assert t == sp.scale_rows([Fraction(1, 4), Fraction(1, 3), Fraction(1, 10), Fraction(1, 3)])
    assert check_slack_conditions(t, QUAD).is_true_slack
    assert row_scale_to_true(RationalMatrix.identity(3)) == RationalMatrix.identity(3)
    half = row_scale_to_true(S_P1)
    assert half == S_P1.scale_rows([Fraction(1, 2)] * 4) and in_column_span(half, [1] * 4)
    with pytest.raises(PolytopeError, match="zero row"):
        row_scale_to_true(m([[1, 0], [0, 0]]))


def test_same_up_to_scaling():
    assert same_up_to_scaling(S_P1, S_P1.scale_columns([1, 2, 3, 4]).scale_rows([5, 1, 1, 2]))
    assert not same_up_to_scaling(S_P1, S_P1.scale_rows([5, 1, 1, 2]), rows=False)
    # every quadrilateral is projectively equivalent to the square ...
    assert same_up_to_scaling(S_P1, S_OTHER)
    # ... but not affinely: column scalings alone do not suffice
    assert not same_up_to_scaling(S_P1, S_OTHER, rows=False)
    assert not same_up_to_scaling(S_P1, S_P1.scale_columns([1, -1, 1, 1]))


# flags


def _exhaustive_triangular(s: RationalMatrix, verts, facets) -> bool:
    k = len(verts)
    upper_zero = all(s[verts[a], facets[b]] == 0 for a in range(k) for b in range(a + 1, k))
    return upper_zero and all(s[verts[a], facets[a]] != 0 for a in range(k))


@pytest.mark.parametrize("name", ["quadrilateral", "tetrahemihexahedron", "altshuler_steinberg",
                                  "prism_square_pyramid", "point_line_configuration"])
def test_flags_on_fixtures(name):
    inc = polytope_from_json(load_fixture(name))
    verts, facets = flag_submatrix(inc)
    assert len(verts) == len(facets) == inc.d + 1
    assert _is_lower_triangular(inc, verts, facets)


def test_cube_flag_exhaustive():
    verts = list(itertools.product([0, 1], repeat=3))
    h, inc = enumerate_facets(VRepresentation(verts))
    s = slack_matrix(VRepresentation(verts), h)
    fv, ff = flag_submatrix(inc)
    assert _exhaustive_triangular(s, fv, ff)
    assert rank(s.submatrix(fv, ff)) == 4


def test_flag_fails_on_non_polytopal_incidence():
    # two vertices on no common facet structure: every vertex on every facet
    inc = IncidenceStructure(2, [[True, True], [True, True], [True, True]], validate=False)
    with pytest.raises(PolytopeError, match="no flag"):
        flag_submatrix(inc)


# realizations


def test_realize_other_matrix():
    v = realize_from_slack(S_OTHER)
    assert v.dimension == 2
    other = polytope_from_json({"dimension": 2, "vertices": SQ["other_vertices"]})
    assert affinely_equivalent(v, other)
    assert not affinely_equivalent(v, polytope_from_json(SQ))
    tri = realize_from_slack(RationalMatrix.identity(3))
    assert affinely_equivalent(tri, VRepresentation([[0, 0], [1, 0], [0, 1]]))


def test_realize_rejects_false_slack():
    with pytest.raises(PolytopeError):
        realize_from_slack(quad_point_matrix(), QUAD)


# properties over random polytopes

SUITE = polygen.suite(seed=5, count=12)


@pytest.mark.parametrize("kind,v", SUITE, ids=[f"{k}-{i}" for i, (k, _) in enumerate(SUITE)])
def test_round_trip_and_theorem_conditions(kind, v):
    h, inc = enumerate_facets(v)
    s = slack_matrix(v, h)
    rep = check_slack_conditions(s, inc)
    assert rep.support_ok and rep.rank_ok and rep.nonnegative
    s1 = normalize_s1(v, h)
    assert check_slack_conditions(s1, inc).is_true_slack
    # polarity: the transpose of an S1 matrix is a slack matrix of the polar
    assert check_slack_conditions(s1.T, inc.transpose()).is_true_slack
    # realizing and re-enumerating gives back the same incidence
    w = realize_from_slack(s1, inc)
    h2, inc2 = enumerate_facets(w)
    assert inc2.num_facets == inc.num_facets
    assert match_up_to_permutation_and_scaling(slack_matrix(w, h2), s1, scale_rows=False) is not None


@pytest.mark.parametrize("kind,v", SUITE[:6], ids=[k for k, _ in SUITE[:6]])
def test_affine_invariance(kind, v):
    rng = random.Random(kind)
    d = v.dimension
    a = polygen._invertible(rng, d)
    w = v.transform(a, [Fraction(rng.randint(-5, 5), 3) for _ in range(d)])
    h, _ = enumerate_facets(v)
    h2, _ = enumerate_facets(w)
    s, s2 = slack_matrix(v, h), slack_matrix(w, h2)
    pr = match_up_to_permutation_and_scaling(s, s2, scale_rows=False)
    assert pr is not None and pr[0] == list(range(v.num_vertices))


@settings(max_examples=25)
@given(st.sampled_from(["quadrilateral", "tetrahemihexahedron", "prism_square_pyramid"]), st.randoms())
def test_flag_rank_for_random_support_matrices(name, rnd):
    inc = polytope_from_json(load_fixture(name))
    s = RationalMatrix.from_rows([[0 if inc.incident[i][j] else Fraction(rnd.randint(1, 30), rnd.randint(1, 7))
                                   for j in range(inc.num_facets)] for i in range(inc.num_vertices)])
    fv, ff = flag_submatrix(inc)
    assert rank(s.submatrix(fv, ff)) == inc.d + 1
    assert rank(s) >= inc.d + 1
