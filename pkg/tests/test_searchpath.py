from __future__ import annotations

import math

import pytest

from rookpursuit.geometry import Point, Polygon, Segment, segment_within
from rookpursuit.searchpath import (
    AUXILIARY,
    CHECKPOINT,
    build_search_path,
    guarded_frontier,
)
from rookpursuit.sweep import (
    MonotoneAnnotation,
    ScallopAnnotation,
    build_frames,
)

# Monotone polygon echoing the canonical search-path figure: both chains
# oscillate, the path hugs horizontals and climbs features.
FIG_PATH_POLY = Polygon(
    [
        (0, 1), (0.45, -0.3), (0.6, 0.2), (1.1, -1.5), (1.4, -0.4), (1.7, -1),
        (1.9, 0.5), (3, -1.75), (3.5, -0.75), (4.2, -1.5), (4.9, -0.5),
        (5.5, -1.6), (5.75, -1), (6, -1.7), (6.5, 0), (6.25, 1.5),
        (5.5, -0.75), (5, 2.1), (4.3, -0.2), (3.9, 0.5), (3.75, 1.8),
        (3.5, 1), (3.2, 2), (2.6, 0.2), (2.1, 1.9), (1.7, 1.3), (1.3, 1.8),
        (1, 0), (0.5, 2),
    ]
)

FIG_PATH_EXPECTED = [
    (0, 1), (0.75, 1), (1, 0), (1.8333333333333333, 0), (1.9, 0.5),
    (2.511764705882353, 0.5), (2.6, 0.2), (4.071428571428571, 0.2),
    (4.3, -0.2), (5.403508771929825, -0.2), (5.5, -0.75),
    (6.279411764705882, -0.75), (6.5, 0),
]


def _mono_dec(poly):
    return build_frames(poly, MonotoneAnnotation(Point(1, 0)))


def test_monotone_path_matches_figure_trace():
    dec = _mono_dec(FIG_PATH_POLY)
    path = build_search_path(dec, Point(0, 1))
    got = path.polyline
    assert len(got) == len(FIG_PATH_EXPECTED)
    for p, (ex, ey) in zip(got, FIG_PATH_EXPECTED):
        assert p.dist(Point(ex, ey)) < 1e-9


def test_monotone_path_hand_trace_small():
    poly = Polygon([(0, 0), (1, -1), (2.5, 1), (4, 0.5), (2, 3)])
    dec = _mono_dec(poly)
    path = build_search_path(dec, Point(0, 0))
    expected = [(0, 0), (1.75, 0), (2.5, 1), (3.6, 1), (4, 0.5)]
    got = path.polyline
    assert len(got) == len(expected)
    for p, (ex, ey) in zip(got, expected):
        assert p.dist(Point(ex, ey)) < 1e-9


def test_convex_path_single_horizontal_then_chain():
    poly = Polygon(
        [
            (5 * math.cos(a), 2 * math.sin(a))
            for a in [2 * math.pi * k / 8 + 0.4 for k in range(8)]
        ]
    )
    dec = _mono_dec(poly)
    start = poly.vertices[dec.start_vertex]
    path = build_search_path(dec, start)
    # One horizontal run to the boundary, then a chain walk to the end.
    kinds = [a.kind for a in path.arcs]
    assert kinds[0] == "horizontal"
    assert path.polyline[-1].dist(poly.vertices[dec.end_vertex]) < 1e-9


def test_path_arcs_stay_inside():
    dec = _mono_dec(FIG_PATH_POLY)
    path = build_search_path(dec, Point(0, 1))
    for arc in path.arcs:
        assert segment_within(
            Segment(arc.start, arc.end, degenerate=arc.start == arc.end),
            FIG_PATH_POLY,
        )


def test_path_x_nondecreasing_within_frames():
    dec = _mono_dec(FIG_PATH_POLY)
    path = build_search_path(dec, Point(0, 1))
    frame = dec.spans[0].frame
    xs = [frame.x(p) for p in path.polyline]
    assert all(b >= a - 1e-9 for a, b in zip(xs, xs[1:]))


def test_monotone_checkpoint_x_nondecreasing():
    dec = _mono_dec(FIG_PATH_POLY)
    path = build_search_path(dec, Point(0, 1))
    frame = dec.spans[0].frame
    xs = [frame.x(cp.location) for (_s, cp) in path.marks]
    assert all(b >= a - 1e-9 for a, b in zip(xs, xs[1:]))


def test_restart_path_from_interior():
    dec = _mono_dec(FIG_PATH_POLY)
    path = build_search_path(dec, Point(3.0, 0.0))
    assert path.polyline[-1].dist(Point(6.5, 0)) < 1e-9
    frame = dec.spans[0].frame
    xs = [frame.x(p) for p in path.polyline]
    assert all(b >= a - 1e-9 for a, b in zip(xs, xs[1:]))


def _scallop_poly(n=9, r0=6.0, bump=1.5, span=2.2):
    # Near chain with radial bumps, far chain smooth; the chains meet at the
    # extreme-angle vertices.  Center at the origin, polygon above it.
    lo = math.pi / 2 - span / 2
    hi = math.pi / 2 + span / 2
    near = []
    for k in range(n):
        a = hi - (hi - lo) * k / (n - 1)
        r = r0 + (bump if 0 < k < n - 1 and k % 2 else 0.0)
        near.append((r * math.cos(a), r * math.sin(a)))
    far = []
    m = 4
    for k in range(m):
        a = lo + (hi - lo) * (k + 1) / (m + 1)
        far.append((10.5 * math.cos(a), 10.5 * math.sin(a)))
    return Polygon(near + far)


def test_scallop_path_reaches_end_and_stays_inside():
    poly = _scallop_poly()
    dec = build_frames(poly, ScallopAnnotation(Point(0, 0)))
    path = build_search_path(dec, poly.vertices[dec.start_vertex])
    assert path.polyline[-1].dist(poly.vertices[dec.end_vertex]) < 1e-9
    for arc in path.arcs:
        assert segment_within(
            Segment(arc.start, arc.end, degenerate=arc.start == arc.end), poly
        ), arc


def test_scallop_checkpoints_on_lower_chain():
    poly = _scallop_poly()
    dec = build_frames(poly, ScallopAnnotation(Point(0, 0)))
    path = build_search_path(dec, poly.vertices[dec.start_vertex])
    lower = set(dec.chains.lower)
    for _s, cp in path.marks:
        if cp.kind == CHECKPOINT and cp.vertex is not None:
            assert cp.vertex in lower
        if cp.kind == AUXILIARY:
            assert cp.vertex in set(dec.chains.upper)


def test_frame_index_nondecreasing_along_path():
    poly = _scallop_poly()
    dec = build_frames(poly, ScallopAnnotation(Point(0, 0)))
    path = build_search_path(dec, poly.vertices[dec.start_vertex])
    idx = [a.frame_index for a in path.arcs]
    assert all(b >= a for a, b in zip(idx, idx[1:]))


def test_guarded_frontier_at_start_is_single_point():
    dec = _mono_dec(FIG_PATH_POLY)
    gf = guarded_frontier(dec, Point(0, 1))
    assert gf.frontier.degenerate
    assert gf.evader_territory_area == pytest.approx(FIG_PATH_POLY.area)


def test_guarded_frontier_interior_spans_chains():
    square = Polygon([(0, 0), (8, 0), (8, 8), (0, 8)])
    dec = _mono_dec(square)
    gf = guarded_frontier(dec, Point(5, 4))
    assert gf.checkpoint.location.dist(Point(0, 4)) < 1e-9
    # With no feature left of the pursuer the guarded part degenerates to
    # the wall point, while the full frontier spans chain to chain.
    assert gf.frontier.degenerate
    assert gf.chord.a.dist(Point(0, 4)) < 1e-9
    assert gf.chord.b.dist(Point(8, 4)) < 1e-9


def test_guarded_frontier_feature_checkpoint():
    # A lower-chain apex touching the frontier level becomes the checkpoint,
    # strictly inside the chord.
    poly = Polygon([(0, 0), (3, -2), (5, 1), (7, -2), (10, 0), (10, 4), (0, 4)])
    dec = _mono_dec(poly)
    gf = guarded_frontier(dec, Point(8, 1))
    assert gf.checkpoint.location.dist(Point(5, 1)) < 1e-9
    assert not gf.frontier.degenerate
    assert gf.frontier.b.dist(Point(5, 1)) < 1e-9
    assert 0 < gf.evader_territory_area < poly.area


def test_guarded_frontier_partition_adds_up():
    dec = _mono_dec(FIG_PATH_POLY)
    # Frontier through y=0.5 grazes the lower-chain apex (1.9, 0.5).
    gf = guarded_frontier(dec, Point(2.3, 0.5))
    assert gf.checkpoint.location.dist(Point(1.9, 0.5)) < 1e-9
    assert not gf.frontier.degenerate
    pts = list(gf.pursuer_territory_boundary)
    assert len(pts) >= 3
    assert 0 < gf.evader_territory_area < FIG_PATH_POLY.area
