"""Norms, chamber distances, mesh approximation, product decomposition."""

from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from cublink.complexes import OrderedComplex, order_complex
from cublink.errors import Disconnected, NoCommonChamber, NotComparableToAll, NotSumZero
from cublink.generators import affine_A_patch, boolean_poset
from cublink.metric import (
    MeshApproximator,
    PLPoint,
    approx_distance,
    chamber_distance,
    chamber_distance_in_complex,
    linf_norm,
    local_product_check,
    polyhedral_ball_extreme_points,
    polyhedral_norm,
)

F = Fraction


# -- norms -------------------------------------------------------------------


def test_linf_basics():
    assert linf_norm([1, 1, 1]) == 1
    assert linf_norm([0, 0, 0]) == 0
    assert linf_norm([]) == 0
    assert linf_norm([F(1, 3), F(-1, 2)]) == F(1, 2)


def test_polyhedral_norm_on_simplex_vertex():
    assert polyhedral_norm([F(2, 3), F(-1, 3), F(-1, 3)]) == 1
    assert polyhedral_norm([0, 0, 0]) == 0


def test_polyhedral_norm_requires_sum_zero():
    with pytest.raises(NotSumZero):
        polyhedral_norm([1, 0, 0])


def test_polyhedral_norm_permutation_invariant():
    v = [F(5, 6), F(-1, 2), F(-1, 3)]
    w = [F(-1, 2), F(-1, 3), F(5, 6)]
    assert polyhedral_norm(v) == polyhedral_norm(w)


rationals = st.fractions(min_value=-3, max_value=3, max_denominator=12)


@given(st.lists(rationals, min_size=1, max_size=5), rationals)
@settings(max_examples=150, deadline=None)
def test_linf_norm_axioms(v, scale):
    w = list(reversed(v))
    assert linf_norm([scale * x for x in v]) == abs(scale) * linf_norm(v)
    assert linf_norm([a + b for a, b in zip(v, w)]) <= linf_norm(v) + linf_norm(w)
    assert linf_norm(v) >= 0


@given(st.lists(rationals, min_size=2, max_size=5), rationals)
@settings(max_examples=150, deadline=None)
def test_polyhedral_norm_axioms(v, scale):
    v = v[:-1] + [-sum(v[:-1], F(0))]
    w = list(reversed(v))
    assert polyhedral_norm([scale * x for x in v]) == abs(scale) * polyhedral_norm(v)
    assert polyhedral_norm([a + b for a, b in zip(v, w)]) <= polyhedral_norm(v) + polyhedral_norm(w)
    assert polyhedral_norm(v) >= 0


def test_hexagon_extreme_points():
    points = polyhedral_ball_extreme_points(2)
    assert len(points) == 6
    for p in points:
        assert sum(p) == 0 and polyhedral_norm(p) == 1


def test_rhombic_dodecahedron_extreme_points():
    points = polyhedral_ball_extreme_points(3)
    assert len(points) == 14
    for p in points:
        assert polyhedral_norm(p) == 1


# -- chamber distances on complexes ----------------------------------------------


def test_all_edges_have_length_one():
    for P in (boolean_poset(2), boolean_poset(3), boolean_poset(4)):
        X = order_complex(P)
        for s in X.maximal_simplices:
            for a, b in zip(s, s[1:]):
                assert chamber_distance_in_complex(X, a, b) == 1
    A = affine_A_patch(2, 1)
    for s in A.maximal_simplices:
        for i in range(len(s)):
            for j in range(i + 1, len(s)):
                assert chamber_distance_in_complex(A, s[i], s[j]) == 1


def test_chamber_diagonal_of_orthoscheme():
    X = order_complex(boolean_poset(3))
    assert chamber_distance_in_complex(X, "{}", "{1,2,3}") == 1


def test_face_distance_matches_ambient_chamber():
    X = order_complex(boolean_poset(3))
    # the edge {} < {1,2} is a face of several chambers; its metric must agree
    p = {"{}": F(1, 3), "{1,2}": F(2, 3)}
    q = {"{}": F(3, 4), "{1,2}": F(1, 4)}
    assert chamber_distance_in_complex(X, p, q) == F(5, 12)


def test_no_common_chamber():
    X = order_complex(boolean_poset(2))
    with pytest.raises(NoCommonChamber):
        chamber_distance_in_complex(X, "{1}", "{2}")


# -- chain-coordinate points -----------------------------------------------------


def test_plpoint_weights_convention():
    chain = ("{}", "{1}", "{1,2}")
    p = PLPoint(chain, (F(0), F(1)))  # all weight on the middle element
    assert p.to_barycentric() == {"{1}": F(1)}
    q = PLPoint(chain, (F(1, 3), F(2, 3)))
    assert q.weights() == [F(1, 3), F(1, 3), F(1, 3)]


def test_chamber_distance_between_chain_points():
    B = boolean_poset(2)
    chain = ("{}", "{1}", "{1,2}")
    p = PLPoint(chain, (F(0), F(0)))      # the top vertex
    q = PLPoint(chain, (F(1), F(1)))      # the bottom vertex
    assert chamber_distance(B, p, q) == 1
    assert chamber_distance(B, p, p) == 0


def test_chamber_distance_uses_gluing():
    B = boolean_poset(2)
    # both points sit on the diagonal edge {} < {1,2}; their chains differ at
    # the middle rank but the identification makes them share a chamber
    p = PLPoint(("{}", "{1}", "{1,2}"), (F(1, 4), F(1, 4)))
    q = PLPoint(("{}", "{2}", "{1,2}"), (F(3, 4), F(3, 4)))
    assert chamber_distance(B, p, q) == F(1, 2)


def test_atoms_of_square_share_no_chamber():
    B = boolean_poset(2)
    a = PLPoint(("{}", "{1}", "{1,2}"), (F(0), F(1)))
    b = PLPoint(("{}", "{2}", "{1,2}"), (F(0), F(1)))
    with pytest.raises(NoCommonChamber):
        chamber_distance(B, a, b)
    # the length metric still sees them at distance 1, via the diagonal
    X = order_complex(B)
    assert approx_distance(X, "{1}", "{2}", F(1, 4)) == 1


# -- mesh approximation ------------------------------------------------------------


def test_one_chamber_distance_survives_any_mesh():
    X = order_complex(boolean_poset(2))
    for mesh in (F(1, 2), F(1, 4), F(1, 8)):
        assert approx_distance(X, "{}", "{1,2}", mesh) == 1


def test_two_squares_sharing_edge_linf():
    # two unit squares side by side: opposite corners at sup-distance 2
    X = OrderedComplex(
        "C",
        ["a0", "a1", "b1", "ab", "c1", "ac"],
        [
            ("a0", "a1", "ab"), ("a0", "b1", "ab"),
            ("a0", "c1", "ac"), ("a0", "a1", "ac"),
        ],
    )
    # squares ab (corners a0..ab) and ac glued along the edge a0 < a1; the
    # shortest route passes through the shared corner a1
    d = approx_distance(X, "ab", "ac", F(1, 8))
    assert d == 2


def test_disconnected_components_raise():
    X = OrderedComplex("C", ["a", "b", "p", "q"], [("a", "b"), ("p", "q")])
    with pytest.raises(Disconnected):
        approx_distance(X, "a", "q", F(1, 2))


def test_mesh_refinement_does_not_increase():
    X = affine_A_patch(2, 2)
    coarse = approx_distance(X, "0,0,0", "1,1,0", F(1, 2))
    fine = approx_distance(X, "0,0,0", "1,1,0", F(1, 4))
    assert fine <= coarse


def test_patch_distance_matches_polyhedral_norm():
    X = affine_A_patch(2, 2)
    approx = MeshApproximator(X, F(1, 4))

    def flat(label):
        v = [F(x) for x in label.split(",")]
        s = sum(v, F(0)) / len(v)
        return [x - s for x in v]

    for target in ("1,0,0", "1,1,0", "2,1,0", "2,2,0"):
        exact = polyhedral_norm([a - b for a, b in zip(flat(target), flat("0,0,0"))])
        got = approx.distance("0,0,0", target)
        assert got == exact


# -- the product decomposition -----------------------------------------------------


def test_chain_interior_product_is_exact():
    chain = boolean_poset(1)  # a 2-chain: {} < {1}
    report = local_product_check(chain, "{}")
    assert report.ok


def comparable_star(P, x):
    return P.restrict([y for y in P.elements if P.comparable(x, y)])


def test_square_at_atom_decomposes():
    L = comparable_star(boolean_poset(2), "{1}")
    report = local_product_check(L, "{1}")
    assert report.ok
    assert report.max_discrepancy <= report.bound


def test_cube_at_atom_decomposes():
    L = comparable_star(boolean_poset(3), "{1}")
    report = local_product_check(L, "{1}")
    assert report.ok


def test_product_check_requires_comparability():
    with pytest.raises(NotComparableToAll):
        local_product_check(boolean_poset(2), "{1}")
