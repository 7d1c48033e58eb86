"""Cube complexes: subdivision combinatorics and the direct link test."""

import pytest

from cublink.complexes import validate
from cublink.cubes import (
    CubeComplex,
    barycentric_cube_subdivision,
    cube_corpus,
    cube_link_reports,
    gromov_link_condition,
    single_cube,
    single_square,
    squares_sharing_two_edges,
    three_squares_corner,
)
from cublink.errors import MalformedCubeComplex


def test_single_square_subdivision_counts():
    X = barycentric_cube_subdivision(single_square())
    assert len(X.vertices) == 9  # 4 vertices + 4 edges + 1 square
    assert len(X.maximal_simplices) == 8
    assert all(len(s) == 3 for s in X.maximal_simplices)
    validate(X)


def test_single_cube_subdivision_counts():
    X = barycentric_cube_subdivision(single_cube())
    assert len(X.vertices) == 8 + 12 + 6 + 1
    assert len(X.maximal_simplices) == 48
    validate(X)


def test_empty_complex():
    X = barycentric_cube_subdivision([])
    assert X.vertices == () and X.maximal_simplices == ()


def test_malformed_sizes_rejected():
    with pytest.raises(MalformedCubeComplex):
        CubeComplex([("a", "b", "c")])
    with pytest.raises(MalformedCubeComplex):
        CubeComplex([("a", "a", "b", "c")])


def test_incompatible_gluing_rejected():
    # the same four vertices spanning squares with different diagonals
    with pytest.raises(MalformedCubeComplex):
        CubeComplex([("p", "q", "r", "s"), ("p", "q", "s", "r")])


def test_gromov_positive_cases():
    for cubes in (single_square(), single_cube()):
        assert gromov_link_condition(cubes)


def test_three_squares_corner_fails_flag():
    reports = {r.vertex: r for r in cube_link_reports(three_squares_corner())}
    bad = reports["v"]
    assert bad.simplicial and not bad.flag
    assert len(bad.witness) == 3
    for v, r in reports.items():
        if v != "v":
            assert r.ok


def test_doubled_corner_not_simplicial():
    reports = {r.vertex: r for r in cube_link_reports(squares_sharing_two_edges())}
    assert not reports["v"].simplicial


def test_wedge_of_squares_passes():
    # two squares sharing one corner: links are two disjoint arcs, which are flag
    assert gromov_link_condition([("v", "a", "b", "c"), ("v", "p", "q", "r")])


def test_random_complexes_agree_with_subdivision_route():
    import random

    from cublink.errors import MalformedCubeComplex
    from cublink.linkcheck import check_type_C

    rng = random.Random(77)
    checked = 0
    while checked < 60:
        pool = [f"u{i}" for i in range(rng.randint(4, 9))]
        cubes = [tuple(rng.sample(pool, 4)) for _ in range(rng.randint(1, 5))]
        try:
            K = CubeComplex(cubes)
        except MalformedCubeComplex:
            continue
        direct = gromov_link_condition(K)
        subdivided = check_type_C(barycentric_cube_subdivision(K)).passed
        assert direct == subdivided, cubes
        checked += 1


def test_corpus_has_both_outcomes():
    corpus = cube_corpus()
    assert len(corpus) >= 20
    outcomes = {name: gromov_link_condition(cubes) for name, cubes in corpus.items()}
    assert outcomes["three_squares_corner"] is False
    assert outcomes["squares_sharing_two_edges"] is False
    assert outcomes["corner_with_cube"] is True
    assert outcomes["grid_2x2"] is True
    assert any(outcomes.values()) and not all(outcomes.values())
