from __future__ import annotations

import math
import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from rookpursuit.geometry import (
    BOUNDARY,
    CCW,
    COLLINEAR,
    CW,
    EXTERIOR,
    INTERIOR,
    EndpointOutsidePolygonError,
    NonSimplePolygonError,
    Point,
    Polygon,
    Segment,
    first_boundary_hit,
    measures,
    orientation,
    point_in_polygon,
    segment_in_polygon,
    segment_within,
    sight_clear,
)

from oracle_geom import IN, ON, OUT, RationalPolygonOracle

SQUARE = Polygon([(0, 0), (4, 0), (4, 4), (0, 4)])
L_POLY = Polygon([(0, 0), (4, 0), (4, 2), (2, 2), (2, 4), (0, 4)])


def test_orientation_canonical_turns():
    assert orientation(Point(0, 0), Point(1, 0), Point(0, 1)) == CCW
    assert orientation(Point(0, 0), Point(1, 1), Point(2, 2)) == COLLINEAR
    assert orientation(Point(0, 0), Point(0, 1), Point(1, 1)) == CW


def test_orientation_near_degenerate_is_exact():
    # Points almost collinear: the exact fallback must decide consistently.
    a = Point(0.0, 0.0)
    b = Point(1e-30, 1e-30)
    c = Point(2e-30, 2e-30)
    assert orientation(a, b, c) == COLLINEAR
    c2 = Point(2e-30, 2.0000000000001e-30)
    assert orientation(a, b, c2) != orientation(c2, b, a)


@given(
    st.tuples(*[st.floats(-100, 100) for _ in range(6)]),
)
@settings(max_examples=300)
def test_orientation_antisymmetry(coords):
    a = Point(coords[0], coords[1])
    b = Point(coords[2], coords[3])
    c = Point(coords[4], coords[5])
    assert orientation(a, b, c) == -orientation(b, a, c)
    assert orientation(a, b, c) == orientation(b, c, a)


def test_segment_in_polygon_convex_chord():
    assert segment_in_polygon(Segment(Point(1, 1), Point(3, 3)), SQUARE)


def test_segment_in_polygon_grazes_reflex_vertex():
    # Grazing the reflex vertex (2,2) counts as inside (closed semantics).
    assert segment_in_polygon(Segment(Point(3, 1), Point(1, 3)), L_POLY)


def test_segment_in_polygon_cuts_notch():
    assert not segment_in_polygon(Segment(Point(3.5, 1), Point(1, 3.5)), L_POLY)


def test_segment_in_polygon_endpoint_outside_raises():
    with pytest.raises(EndpointOutsidePolygonError):
        segment_in_polygon(Segment(Point(5, 5), Point(1, 1)), SQUARE)


def test_segment_along_edge_is_inside():
    assert segment_in_polygon(Segment(Point(0, 0), Point(4, 0)), SQUARE)
    assert segment_in_polygon(Segment(Point(1, 0), Point(3, 0)), SQUARE)


def test_point_in_polygon_classes():
    assert point_in_polygon(Point(2, 2), SQUARE) == INTERIOR
    assert point_in_polygon(Point(4, 2), SQUARE) == BOUNDARY
    assert point_in_polygon(Point(5, 2), SQUARE) == EXTERIOR
    assert point_in_polygon(Point(0, 0), SQUARE) == BOUNDARY
    assert point_in_polygon(Point(2, 2), L_POLY) == BOUNDARY
    assert point_in_polygon(Point(3, 3), L_POLY) == EXTERIOR


def test_first_boundary_hit_examples():
    poly = Polygon([(0, 1), (1, 0), (3, 0), (4, 1), (2, 2)])
    hit = first_boundary_hit(Point(0, 1), Point(1, 0), poly)
    assert hit.point.dist(Point(4, 1)) < 1e-9

    hit = first_boundary_hit(Point(2, 2), Point(1, 0), SQUARE)
    assert hit.point.dist(Point(4, 2)) < 1e-9
    hit = first_boundary_hit(Point(2, 2), Point(0, 1), SQUARE)
    assert hit.point.dist(Point(2, 4)) < 1e-9


def test_first_boundary_hit_lands_on_boundary():
    from rookpursuit.geometry import distance_to_boundary

    rng = random.Random(7)
    for _ in range(50):
        ang = rng.uniform(0, 2 * math.pi)
        hit = first_boundary_hit(
            Point(2, 2), Point(math.cos(ang), math.sin(ang)), SQUARE
        )
        assert distance_to_boundary(hit.point, SQUARE) <= 1e-9
        assert hit.point.dist(Point(2, 2)) > 1e-9


def test_measures():
    area, dia, feat, n = measures(SQUARE)
    assert area == pytest.approx(16)
    assert dia == pytest.approx(4 * math.sqrt(2))
    assert feat == pytest.approx(4)
    assert n == 4
    tri = Polygon([(0, 0), (3, 0), (0, 4)])
    area, dia, feat, n = measures(tri)
    assert (area, dia, feat, n) == (pytest.approx(6), pytest.approx(5), pytest.approx(3), 3)


def test_bowtie_rejected():
    with pytest.raises(NonSimplePolygonError):
        Polygon([(0, 0), (2, 2), (2, 0), (0, 2)])


def test_clockwise_rejected():
    with pytest.raises(NonSimplePolygonError):
        Polygon([(0, 0), (0, 4), (4, 4), (4, 0)])


def _random_monotone_polygon(rng: random.Random) -> Polygon:
    grid = 1 / 64
    snap = lambda v: round(v / grid) * grid
    n = rng.randrange(3, 10)
    xs = sorted({snap(rng.uniform(0, 20)) for _ in range(n + 2)})
    if len(xs) < 3:
        return SQUARE
    lo = [(x, snap(-rng.uniform(0.5, 5))) for x in xs[1:-1]]
    hi = [(x, snap(rng.uniform(0.5, 5))) for x in xs[1:-1]]
    pts = [(xs[0], 0.0)] + lo + [(xs[-1], 0.0)] + hi[::-1]
    try:
        return Polygon(pts)
    except NonSimplePolygonError:
        return SQUARE


def test_agreement_with_rational_oracle():
    rng = random.Random(42)
    grid = 1 / 64
    for _ in range(25):
        poly = _random_monotone_polygon(rng)
        oracle = RationalPolygonOracle([(v.x, v.y) for v in poly.vertices])
        xmin, ymin, xmax, ymax = poly.bbox
        hits = 0
        while hits < 60:
            a = Point(
                round(rng.uniform(xmin, xmax) / grid) * grid,
                round(rng.uniform(ymin, ymax) / grid) * grid,
            )
            b = Point(
                round(rng.uniform(xmin, xmax) / grid) * grid,
                round(rng.uniform(ymin, ymax) / grid) * grid,
            )
            ca = point_in_polygon(a, poly)
            cb = point_in_polygon(b, poly)
            oa = oracle.classify_point(a.x, a.y)
            assert (ca == INTERIOR) == (oa == IN)
            assert (ca == BOUNDARY) == (oa == ON)
            if ca == EXTERIOR or cb == EXTERIOR:
                continue
            hits += 1
            got = segment_in_polygon(Segment(a, b, degenerate=a == b), poly)
            want = oracle.segment_fully_inside(a, b)
            assert got == want, f"{a} {b} {poly.vertices}"


def test_convex_chords_always_inside():
    rng = random.Random(3)
    hexagon = Polygon(
        [
            (math.cos(k * math.pi / 3) * 5, math.sin(k * math.pi / 3) * 5)
            for k in range(6)
        ]
    )
    for _ in range(200):
        a = Point(rng.uniform(-2, 2), rng.uniform(-2, 2))
        b = Point(rng.uniform(-2, 2), rng.uniform(-2, 2))
        if a == b:
            continue
        assert segment_in_polygon(Segment(a, b), hexagon)


def test_segment_within_tolerates_boundary_slop():
    # A move that strays a hair outside along an edge is accepted...
    s = Segment(Point(0.5, -1e-12), Point(3.5, -1e-12))
    assert segment_within(s, SQUARE)
    # ...but a genuine excursion is not.
    assert not segment_within(Segment(Point(3.5, 1), Point(1, 3.5)), L_POLY)
    # The reflex graze stays acceptable.
    assert segment_within(Segment(Point(3, 1), Point(1, 3)), L_POLY)


def test_sight_clear_matches_segment_in_polygon():
    rng = random.Random(11)
    checked = 0
    while checked < 200:
        a = Point(rng.uniform(0.2, 3.8), rng.uniform(0.2, 3.8))
        b = Point(rng.uniform(0.2, 3.8), rng.uniform(0.2, 3.8))
        if (
            point_in_polygon(a, L_POLY) == EXTERIOR
            or point_in_polygon(b, L_POLY) == EXTERIOR
        ):
            continue
        checked += 1
        assert sight_clear(L_POLY, a, b) == segment_in_polygon(
            Segment(a, b, degenerate=a == b), L_POLY
        )
