"""Random polygon generators for the batch harness and tests.

All generators guarantee verification of the produced annotation and a
minimum feature size of at least one unit (rescaling when necessary).
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass
from typing import Optional

from .geometry import EXTERIOR, Point, Polygon, point_in_polygon
from .sweep import (
    Annotation,
    MonotoneAnnotation,
    ScallopAnnotation,
    SweepableAnnotation,
    build_frames,
    verify_monotone,
    verify_scallop,
)


@dataclass(frozen=True)
class GeneratedPolygon:
    polygon: Polygon
    annotation: Annotation
    evader_starts: tuple


def _rescale_to_feature(points, target: float = 1.0):
    """Scale the point set up so the min pairwise distance is >= target."""
    feat = math.inf
    for i in range(len(points)):
        for j in range(i + 1, len(points)):
            d = math.dist(points[i], points[j])
            feat = min(feat, d)
    if feat <= 0:
        return None
    if feat >= target * 1.00002:
        return points
    k = target / feat * 1.00005
    return [(x * k, y * k) for (x, y) in points]


def _snap(points, grid=2.0 ** -20):
    return [(round(x / grid) * grid, round(y / grid) * grid) for x, y in points]


def random_monotone(
    rng: random.Random,
    n_max: int = 30,
    area_max: float = 300.0,
    width: float = 14.0,
    height: float = 3.0,
) -> GeneratedPolygon:
    """x-sorted vertex walk with jittered chains; unit features are kept by
    construction (x gaps above one, chains separated by a one-unit band)."""
    for _ in range(200):
        xs = [0.0]
        while xs[-1] < width:
            xs.append(xs[-1] + rng.uniform(1.05, 2.4))
        inner = xs[1:-1]
        if len(inner) + 2 > n_max or len(inner) < 2:
            continue
        lows, ups = [], []
        for x in inner:
            if rng.random() < 0.5:
                lows.append((x, -rng.uniform(0.55, height)))
            else:
                ups.append((x, rng.uniform(0.55, height)))
        if not lows or not ups:
            continue
        pts = [(xs[0], 0.0)] + lows + [(xs[-1], 0.0)] + ups[::-1]
        pts = _snap(pts)
        try:
            poly = Polygon(pts)
            if poly.area > area_max or poly.min_feature_size < 1.0:
                continue
            ann = MonotoneAnnotation(Point(1, 0))
            dec = build_frames(poly, ann)
        except Exception:
            continue
        starts = _pick_starts(rng, poly, dec)
        if starts:
            return GeneratedPolygon(poly, ann, tuple(starts))
    raise RuntimeError("random_monotone failed to produce a polygon")


def random_scallop(
    rng: random.Random,
    n_max: int = 26,
    area_max: float = 300.0,
    span_max: float = 2.4,
) -> GeneratedPolygon:
    """Angle-sorted radial walk about an external center at the origin."""
    for _ in range(300):
        span = rng.uniform(0.9, span_max)
        mid = math.pi / 2
        hi, lo = mid + span / 2, mid - span / 2
        r_near, r_far = 8.0, 13.5
        min_gap = max(0.09, span / (n_max * 0.8))
        angs = [hi]
        cap = max(3, (n_max * 2) // 3)
        while angs[-1] - lo > 2.2 * min_gap and len(angs) < cap:
            angs.append(angs[-1] - rng.uniform(min_gap, 2.5 * min_gap))
        angs.append(lo)
        near = []
        for i, a in enumerate(angs):
            bump = rng.uniform(-1.0, 2.2) if 0 < i < len(angs) - 1 else 0.0
            r = r_near + bump
            near.append((r * math.cos(a), r * math.sin(a)))
        n_far = rng.randrange(2, 5)
        far = []
        a = lo + 0.1
        step = (hi - lo - 0.2) / n_far
        for _k in range(n_far):
            a_k = a + rng.uniform(0.1, 0.9) * step
            r = r_far + rng.uniform(-0.8, 0.8)
            far.append((r * math.cos(a_k), r * math.sin(a_k)))
            a += step
        pts = _rescale_to_feature(near + far)
        if pts is None:
            continue
        pts = _snap(pts)
        try:
            poly = Polygon(pts)
            if poly.area > area_max:
                continue
            ann = ScallopAnnotation(Point(0, 0))
            verify_scallop(poly, ann.center)
            dec = build_frames(poly, ann)
        except Exception:
            continue
        starts = _pick_starts(rng, poly, dec)
        if starts:
            return GeneratedPolygon(poly, ann, tuple(starts))
    raise RuntimeError("random_scallop failed to produce a polygon")


def random_sweepable(rng: random.Random, pieces: int = 2) -> GeneratedPolygon:
    """Two- or three-piece sweepable polygons built from compatible halves."""
    for _ in range(300):
        try:
            built = _build_sweepable_candidate(rng, pieces)
        except Exception:
            continue
        if built is None:
            continue
        poly, ann = built
        try:
            dec = build_frames(poly, ann)
        except Exception:
            continue
        starts = _pick_starts(rng, poly, dec)
        if starts:
            return GeneratedPolygon(poly, ann, tuple(starts))
    raise RuntimeError("random_sweepable failed to produce a polygon")


def _build_sweepable_candidate(rng: random.Random, pieces: int):
    """Monotone strip followed by a scallop fan (and optionally another
    monotone tail), glued along a shared vertical cut."""
    # Left monotone piece: x from 0 to W, flat-ish chains.
    w = rng.uniform(6.0, 9.0)
    top = rng.uniform(4.5, 6.0)
    n_mid = rng.randrange(1, 4)
    xs = sorted(rng.uniform(1.2, w - 1.2) for _ in range(n_mid))
    if any(b - a < 1.2 for a, b in zip(xs, xs[1:])):
        return None
    low_pts = [(0.0, 0.0)]
    for x in xs:
        low_pts.append((x, rng.uniform(0.0, 1.2)))
    low_pts.append((w, 0.5))
    # Scallop piece to the right about a center below the cut at (w, -R).
    r0 = rng.uniform(7.0, 9.0)
    center = (w, 0.5 - r0)
    span = rng.uniform(0.7, 1.1)
    n_sp = rng.randrange(2, 5)
    angs = [math.pi / 2 - span * (k + 1) / n_sp for k in range(n_sp)]
    near = []
    for k, a in enumerate(angs):
        r = r0 + (rng.uniform(0.0, 1.5) if k < n_sp - 1 else 0.0)
        near.append((center[0] + r * math.cos(a), center[1] + r * math.sin(a)))
    far_r = r0 + top
    far = [
        (center[0] + far_r * math.cos(a), center[1] + far_r * math.sin(a))
        for a in sorted(angs[:-1])
    ]
    up_pts = [(w, 0.5 + top)]
    for x in xs[::-1]:
        up_pts.append((x, top + rng.uniform(-0.8, 0.4)))
    up_pts.append((0.0, top))
    pts = low_pts + near + far + up_pts
    pts = _rescale_to_feature(pts)
    if pts is None:
        return None
    pts = _snap(pts)
    scale = pts[0][0] - 0.0  # snap keeps order; recompute scaled anchors
    # Recover the scaled cut endpoints: they are the vertices that came from
    # (w, 0.5) and (w, 0.5 + top).
    idx_cut_low = len(low_pts) - 1
    idx_cut_up = len(low_pts) + len(near) + len(far)
    cut = (pts[idx_cut_low], pts[idx_cut_up])
    k = None
    # Scale factor applied by _rescale_to_feature; recompute center.
    orig = low_pts + near + far + up_pts
    kx = pts[0][0] / orig[0][0] if orig[0][0] else None
    factors = [
        p[0] / o[0] for p, o in zip(pts, orig) if abs(o[0]) > 1e-9
    ] + [p[1] / o[1] for p, o in zip(pts, orig) if abs(o[1]) > 1e-9]
    scale = factors[0] if factors else 1.0
    scaled_center = Point(center[0] * scale, center[1] * scale)
    poly = Polygon(pts)
    ann = SweepableAnnotation(
        (MonotoneAnnotation(Point(1, 0)), ScallopAnnotation(scaled_center)),
        ((Point(*cut[0]), Point(*cut[1])),),
    )
    return poly, ann


def _pick_starts(rng: random.Random, poly: Polygon, dec, k: int = 4):
    xmin, ymin, xmax, ymax = poly.bbox
    starts = []
    v1 = poly.vertices[dec.start_vertex]
    for _ in range(300):
        p = Point(rng.uniform(xmin, xmax), rng.uniform(ymin, ymax))
        if point_in_polygon(p, poly) == EXTERIOR:
            continue
        if p.dist(v1) < 2.0:
            continue
        starts.append(p)
        if len(starts) >= k:
            break
    return starts
