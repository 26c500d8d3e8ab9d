from __future__ import annotations

import math
import random

import pytest

from rookpursuit.geometry import Point, Polygon
from rookpursuit.sweep import (
    Frame,
    MonotoneAnnotation,
    NotMonotoneError,
    NotScallopError,
    ScallopAnnotation,
    SweepableAnnotation,
    build_frames,
    detect_monotone_axis,
    verify_monotone,
    verify_scallop,
)


def _regular(n, r=5.0, cx=0.0, cy=0.0):
    return Polygon(
        [
            (cx + r * math.cos(2 * math.pi * k / n), cy + r * math.sin(2 * math.pi * k / n))
            for k in range(n)
        ]
    )


def test_convex_monotone_any_axis():
    poly = _regular(8)
    for ang in (0.0, 0.3, 1.2, 2.0):
        chains = verify_monotone(poly, Point(math.cos(ang), math.sin(ang)))
        assert set(chains.lower) | set(chains.upper) == set(range(poly.n))
        assert set(chains.lower) & set(chains.upper) == {
            chains.leftmost,
            chains.rightmost,
        }


def _rotated(points, ang):
    c, s = math.cos(ang), math.sin(ang)
    return [(x * c - y * s, x * s + y * c) for x, y in points]


PLUS_POINTS = [
    (1, 0), (2, 0), (2, 1), (3, 1), (3, 2), (2, 2), (2, 3), (1, 3),
    (1, 2), (0, 2), (0, 1), (1, 1),
]


def test_axis_aligned_plus_is_monotone_with_vertical_edges():
    # Shared x-coordinates are accepted (tie-broken by index), which makes
    # the axis-aligned plus monotone; the slab oracle agrees.
    from oracle_geom import line_polygon_interval_count

    plus = Polygon(PLUS_POINTS)
    chains = verify_monotone(plus, Point(1, 0))
    assert chains is not None
    for x in (0.5, 1.25, 1.5, 2.75):
        assert line_polygon_interval_count(PLUS_POINTS, (x, 0.0), (0.0, 1.0)) == 1


def test_rotated_plus_not_monotone():
    from oracle_geom import line_polygon_interval_count

    pts = _rotated(PLUS_POINTS, 0.2)
    plus = Polygon(pts)
    with pytest.raises(NotMonotoneError) as exc:
        verify_monotone(plus, Point(1, 0))
    assert exc.value.witness is not None
    # Oracle: some vertical line meets the rotated plus in two intervals.
    assert any(
        line_polygon_interval_count(pts, (x, 0.0), (0.0, 1.0)) > 1
        for x in [i * 0.1 for i in range(-10, 35)]
    )


def test_monotone_chains_are_x_sorted():
    poly = Polygon(
        [(0, 1), (0.45, -0.3), (1.1, -1.5), (1.9, 0.5), (3, -1.75), (4, 0),
         (3.2, 2), (2.1, 1.9), (1.3, 1.8), (0.5, 2)]
    )
    chains = verify_monotone(poly, Point(1, 0))
    xs_lower = [poly.vertices[i].x for i in chains.lower]
    xs_upper = [poly.vertices[i].x for i in chains.upper]
    assert xs_lower == sorted(xs_lower)
    assert xs_upper == sorted(xs_upper)


def test_convex_scallop_external_center():
    poly = _regular(6, r=2.0, cx=0.0, cy=8.0)
    chains = verify_scallop(poly, Point(0, 0))
    assert set(chains.lower) | set(chains.upper) == set(range(poly.n))


def test_comb_toward_center_rejected():
    # Teeth skewed against the sweep direction: some spoke crosses the near
    # chain three times, so the rotating-line intersection disconnects.
    comb = Polygon(
        [
            (-3, 5), (-2.4, 3.0), (-1, 5), (-1.4, 3.0), (1, 5), (2, 3.0),
            (3, 5), (3, 7), (-3, 7),
        ]
    )
    with pytest.raises(NotScallopError) as exc:
        verify_scallop(comb, Point(0, 0))
    assert exc.value.witness_angle is not None
    # Brute-force oracle: some spoke between the flank and the skewed tip
    # crosses the near chain three times.
    from oracle_geom import line_polygon_interval_count

    verts = [(v.x, v.y) for v in comb.vertices]
    probes = [math.radians(a) for a in range(95, 120)]
    assert any(
        line_polygon_interval_count(verts, (0.0, 0.0), (math.cos(a), math.sin(a))) > 1
        for a in probes
    )


def test_scallop_center_inside_rejected():
    poly = _regular(6)
    with pytest.raises(NotScallopError):
        verify_scallop(poly, Point(0, 0))


def test_build_frames_monotone_single():
    poly = _regular(8)
    dec = build_frames(poly, MonotoneAnnotation(Point(1, 0)))
    assert dec.frame_count() == 1
    assert dec.frames[0].kind == "monotone"


def test_build_frames_scallop_one_per_vertex():
    poly = _regular(12, r=2.0, cy=9.0)
    dec = build_frames(poly, ScallopAnnotation(Point(0, 0)))
    assert dec.frame_count() == 12
    assert all(f.kind == "spoke" for f in dec.frames)
    # Frames ordered by decreasing angle about the center.
    angs = [math.atan2(f.origin.y, f.origin.x) for f in dec.frames]
    assert all(a >= b - 1e-12 for a, b in zip(angs, angs[1:]))


def test_frame_round_trip():
    rng = random.Random(5)
    ident = Frame(0, Point(0, 0), Point(0, 1), Point(1, 0))
    assert ident.to_frame(Point(3, 4)) == (3, 4)
    rot = Frame(0, Point(0, 0), Point(1, 0), Point(0, -1))
    x, y = rot.to_frame(Point(1, 0))
    assert (x, y) == pytest.approx((0, 1))
    worst = 0.0
    for _ in range(10_000):
        ang = rng.uniform(0, 2 * math.pi)
        up = Point(math.cos(ang), math.sin(ang))
        f = Frame(0, Point(rng.uniform(-9, 9), rng.uniform(-9, 9)), up,
                  Point(up.y, -up.x))
        p = Point(rng.uniform(-50, 50), rng.uniform(-50, 50))
        x, y = f.to_frame(p)
        back = f.from_frame(x, y)
        worst = max(worst, back.dist(p))
    assert worst < 1e-12


def test_frames_are_right_handed():
    poly = _regular(12, r=2.0, cy=9.0)
    dec = build_frames(poly, ScallopAnnotation(Point(0, 0)))
    for f in dec.frames:
        assert f.horizontal.cross(f.vertical) == pytest.approx(1.0)
        assert abs(f.horizontal.dot(f.vertical)) < 1e-12


def test_detect_monotone_axis():
    poly = _regular(8)
    assert detect_monotone_axis(poly) is not None
    # Deep slits in two orthogonal directions defeat every sweep axis.
    slitted = Polygon(
        [
            (0, 0), (2.8, 0), (2.8, 7), (3.2, 7), (3.2, 0), (10, 0),
            (10, 5.8), (4, 5.8), (4, 6.2), (10, 6.2), (10, 10), (0, 10),
        ]
    )
    assert detect_monotone_axis(slitted) is None


def test_sweepable_two_pieces_monotone_scallop():
    # Left half monotone, right half a scallop about a center below; the
    # shared cut is the vertical line through (4, y) passing the center.
    poly = Polygon(
        [
            (0, 0), (2, -0.5), (4, 0), (6, 1.0), (7, 2.5), (7.2, 4.5),
            (4, 3.5), (2, 3.6), (0, 3.4),
        ]
    )
    center = Point(4, -8)
    cut = (Point(4, 0), Point(4, 3.5))
    ann = SweepableAnnotation(
        (MonotoneAnnotation(Point(1, 0)), ScallopAnnotation(center)),
        (cut,),
    )
    dec = build_frames(poly, ann)
    assert dec.frame_count() >= 2
    assert dec.spans[0].frame.kind == "monotone"
    assert dec.spans[1].frame.kind == "spoke"
    assert dec.frame_count() <= poly.n
    # No orientation flip: same-side sweep.
    assert not any(s.flip_from_previous for s in dec.spans)
    assert all(s.lower_is_ccw_chain for s in dec.spans)
