"""Robust planar geometry kernel.

All orientation-style predicates are evaluated exactly: a floating-point
filter decides the easy cases and a rational fallback settles anything
near-degenerate, so predicate answers are never inconsistent with each
other.  Metric quantities (distances, ray parameters, frontier advances)
are ordinary doubles compared against ``EPS``.

Containment uses closed-region semantics: a segment that grazes a vertex
or runs along an edge counts as inside.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import NamedTuple

EPS = 1e-9

CCW = 1
CW = -1
COLLINEAR = 0

INTERIOR = "interior"
BOUNDARY = "boundary"
EXTERIOR = "exterior"

# Static filter for the orientation determinant: when |det| exceeds
# _ORIENT_FILTER * (|detleft| + |detright|) the floating-point sign is exact.
_ORIENT_FILTER = 3.3306690738754716e-16


class GeometryError(Exception):
    """Base class for geometric precondition failures."""


class NonSimplePolygonError(GeometryError):
    """Polygon boundary self-intersects (or is otherwise degenerate)."""


class EndpointOutsidePolygonError(GeometryError):
    """A containment query was made for a segment with an endpoint outside."""


class RayExitsImmediatelyError(GeometryError):
    """A boundary ray cast started on the boundary heading outward."""


class _PointBase(NamedTuple):
    x: float
    y: float


class Point(_PointBase):
    """Planar point; coordinates are always finite floats."""

    __slots__ = ()

    def __new__(cls, x: float, y: float):
        if not (math.isfinite(x) and math.isfinite(y)):
            raise ValueError(f"non-finite coordinates ({x}, {y})")
        return _PointBase.__new__(cls, float(x), float(y))

    def __add__(self, other):  # type: ignore[override]
        return Point(self.x + other.x, self.y + other.y)

    def __sub__(self, other):
        return Point(self.x - other.x, self.y - other.y)

    def scaled(self, k: float) -> "Point":
        return Point(self.x * k, self.y * k)

    def dot(self, other: "Point") -> float:
        return self.x * other.x + self.y * other.y

    def cross(self, other: "Point") -> float:
        return self.x * other.y - self.y * other.x

    def norm(self) -> float:
        return math.hypot(self.x, self.y)

    def dist(self, other: "Point") -> float:
        return math.hypot(self.x - other.x, self.y - other.y)

    def normalized(self) -> "Point":
        n = self.norm()
        if n < EPS:
            raise ValueError("cannot normalize a near-zero vector")
        return Point(self.x / n, self.y / n)

    def perp(self) -> "Point":
        """This vector rotated +90 degrees."""
        return Point(-self.y, self.x)


@dataclass(frozen=True)
class Segment:
    a: Point
    b: Point
    degenerate: bool = False

    def __post_init__(self):
        if self.a == self.b and not self.degenerate:
            raise ValueError("zero-length segment must be flagged degenerate")

    def length(self) -> float:
        return self.a.dist(self.b)

    def midpoint(self) -> Point:
        return Point((self.a.x + self.b.x) / 2.0, (self.a.y + self.b.y) / 2.0)


def orientation(a: Point, b: Point, c: Point) -> int:
    """Exact sign of the signed area of triangle abc: CCW, CW or COLLINEAR."""
    detleft = (a[0] - c[0]) * (b[1] - c[1])
    detright = (a[1] - c[1]) * (b[0] - c[0])
    det = detleft - detright
    bound = _ORIENT_FILTER * (abs(detleft) + abs(detright))
    if det > bound:
        return CCW
    if det < -bound:
        return CW
    if bound == 0.0:
        return COLLINEAR
    return _orientation_exact(a, b, c)


def _orientation_exact(a, b, c) -> int:
    ax, ay = Fraction(a[0]), Fraction(a[1])
    bx, by = Fraction(b[0]), Fraction(b[1])
    cx, cy = Fraction(c[0]), Fraction(c[1])
    det = (ax - cx) * (by - cy) - (ay - cy) * (bx - cx)
    if det > 0:
        return CCW
    if det < 0:
        return CW
    return COLLINEAR


def _on_segment_collinear(a, b, p) -> bool:
    """Whether collinear point p lies within the closed span of a-b."""
    return (
        min(a[0], b[0]) <= p[0] <= max(a[0], b[0])
        and min(a[1], b[1]) <= p[1] <= max(a[1], b[1])
    )


def segments_touch(a: Point, b: Point, c: Point, d: Point) -> bool:
    """Exact test: do closed segments ab and cd share any point?"""
    o1 = orientation(a, b, c)
    o2 = orientation(a, b, d)
    o3 = orientation(c, d, a)
    o4 = orientation(c, d, b)
    if o1 != o2 and o3 != o4:
        return True
    if o1 == 0 and _on_segment_collinear(a, b, c):
        return True
    if o2 == 0 and _on_segment_collinear(a, b, d):
        return True
    if o3 == 0 and _on_segment_collinear(c, d, a):
        return True
    if o4 == 0 and _on_segment_collinear(c, d, b):
        return True
    return False


class Polygon:
    """Simple polygon with counter-clockwise boundary.

    Vertices are stored without repeating the first at the end.  Rejects
    duplicate vertices, clockwise input and self-intersecting boundaries.
    Edge geometry is pre-flattened for the hot-path loops.
    """

    __slots__ = (
        "vertices",
        "n",
        "edges",
        "edge_bboxes",
        "area",
        "diameter",
        "min_feature_size",
        "bbox",
    )

    def __init__(self, vertices):
        verts = tuple(Point(v[0], v[1]) for v in vertices)
        if len(verts) < 3:
            raise NonSimplePolygonError("polygon needs at least 3 vertices")
        if len(set(verts)) != len(verts):
            raise NonSimplePolygonError("duplicate vertices")
        area2 = 0.0
        for i in range(len(verts)):
            a = verts[i]
            b = verts[(i + 1) % len(verts)]
            area2 += a.x * b.y - a.y * b.x
        if area2 <= 0:
            raise NonSimplePolygonError("vertices must be counter-clockwise")
        self.vertices = verts
        self.n = len(verts)
        self.edges = tuple(
            (verts[i], verts[(i + 1) % len(verts)]) for i in range(len(verts))
        )
        self.edge_bboxes = tuple(
            (min(a.x, b.x), min(a.y, b.y), max(a.x, b.x), max(a.y, b.y))
            for a, b in self.edges
        )
        self._check_simple()
        self.area = area2 / 2.0
        dia = 0.0
        feat = math.inf
        for i in range(len(verts)):
            vi = verts[i]
            for j in range(i + 1, len(verts)):
                d = vi.dist(verts[j])
                if d > dia:
                    dia = d
                if d < feat:
                    feat = d
        self.diameter = dia
        self.min_feature_size = feat
        xs = [v.x for v in verts]
        ys = [v.y for v in verts]
        self.bbox = (min(xs), min(ys), max(xs), max(ys))

    def _check_simple(self):
        n = self.n
        verts = self.vertices
        for i in range(n):
            prev = verts[i - 1]
            cur = verts[i]
            nxt = verts[(i + 1) % n]
            if orientation(prev, cur, nxt) == COLLINEAR:
                if (cur.x - prev.x) * (nxt.x - cur.x) + (cur.y - prev.y) * (
                    nxt.y - cur.y
                ) < 0:
                    raise NonSimplePolygonError(f"boundary folds back at vertex {i}")
        for i in range(n):
            a, b = self.edges[i]
            for j in range(i + 1, n):
                if j == i + 1 or (i == 0 and j == n - 1):
                    continue
                c, d = self.edges[j]
                if segments_touch(a, b, c, d):
                    raise NonSimplePolygonError(f"edges {i} and {j} intersect")

    def contains_point(self, p: Point) -> str:
        return point_in_polygon(p, self)

    def __repr__(self):
        return f"Polygon(n={self.n}, area={self.area:.3f})"


def measures(q: Polygon):
    """(area, diameter, min_feature_size, n).

    Diameter is the max pairwise vertex distance (the hull diameter);
    min_feature_size is the min pairwise vertex distance.
    """
    return (q.area, q.diameter, q.min_feature_size, q.n)


def point_in_polygon(p: Point, q: Polygon) -> str:
    """Classify p as INTERIOR / BOUNDARY / EXTERIOR, exactly.

    Crossing count against a +x ray with a semi-open vertex rule; on-edge
    points are detected exactly before any counting.
    """
    px, py = p[0], p[1]
    xmin, ymin, xmax, ymax = q.bbox
    if px < xmin or px > xmax or py < ymin or py > ymax:
        return EXTERIOR
    inside = False
    for (a, b), (exmin, eymin, exmax, eymax) in zip(q.edges, q.edge_bboxes):
        if exmin <= px <= exmax and eymin <= py <= eymax:
            if orientation(a, b, p) == COLLINEAR:
                return BOUNDARY
        ay, by = a[1], b[1]
        if (ay > py) != (by > py):
            if by > ay:
                if orientation(a, b, p) == CCW:
                    inside = not inside
            else:
                if orientation(a, b, p) == CW:
                    inside = not inside
    return INTERIOR if inside else EXTERIOR


def _pip_exact(px: Fraction, py: Fraction, verts) -> str:
    """Exact point-in-polygon on rational coordinates (same ray rule)."""
    n = len(verts)
    inside = False
    for i in range(n):
        ax, ay = verts[i]
        bx, by = verts[(i + 1) % n]
        det = (ax - px) * (by - py) - (ay - py) * (bx - px)
        if det == 0:
            if min(ax, bx) <= px <= max(ax, bx) and min(ay, by) <= py <= max(ay, by):
                return BOUNDARY
        if (ay > py) != (by > py):
            if by > ay:
                if det > 0:
                    inside = not inside
            else:
                if det < 0:
                    inside = not inside
    return INTERIOR if inside else EXTERIOR


def segment_in_polygon(s: Segment, q: Polygon) -> bool:
    """True iff every point of s lies in the closed polygon q.

    Raises EndpointOutsidePolygonError when an endpoint is strictly outside
    (the query is then ill-posed per the movement contract).
    """
    ca = point_in_polygon(s.a, q)
    cb = point_in_polygon(s.b, q)
    if ca == EXTERIOR:
        raise EndpointOutsidePolygonError(f"segment endpoint outside polygon: {s.a}")
    if cb == EXTERIOR:
        raise EndpointOutsidePolygonError(f"segment endpoint outside polygon: {s.b}")
    return _segment_inside(s.a, s.b, q, ca, cb)


def sight_clear(q: Polygon, a: Point, b: Point) -> bool:
    """Exact containment check for two points already inside q."""
    if a == b:
        return True
    return _segment_inside(a, b, q, INTERIOR, INTERIOR)


def _segment_inside(pa: Point, pb: Point, q: Polygon, ca: str, cb: str) -> bool:
    if pa == pb:
        return True
    sxmin, sxmax = (pa[0], pb[0]) if pa[0] <= pb[0] else (pb[0], pa[0])
    symin, symax = (pa[1], pb[1]) if pa[1] <= pb[1] else (pb[1], pa[1])
    touched = ca == BOUNDARY or cb == BOUNDARY
    for (ea, eb), (exmin, eymin, exmax, eymax) in zip(q.edges, q.edge_bboxes):
        if exmin > sxmax or exmax < sxmin or eymin > symax or eymax < symin:
            continue
        o1 = orientation(pa, pb, ea)
        o2 = orientation(pa, pb, eb)
        if o1 == o2 and o1 != 0:
            continue
        o3 = orientation(ea, eb, pa)
        o4 = orientation(ea, eb, pb)
        if o1 != 0 and o2 != 0 and o3 != 0 and o4 != 0:
            if o3 != o4:
                return False  # proper transversal crossing
            continue
        # Degenerate contact: the unique line intersection sits at whichever
        # point produced the zero.  Outside the relevant span means no
        # contact; otherwise remember the touch for the exact pass.
        if o1 == 0 and o2 == 0:
            if (
                _on_segment_collinear(pa, pb, ea)
                or _on_segment_collinear(pa, pb, eb)
                or _on_segment_collinear(ea, eb, pa)
            ):
                touched = True
            continue
        if o1 == 0:
            if _on_segment_collinear(pa, pb, ea):
                touched = True
            continue
        if o2 == 0:
            if _on_segment_collinear(pa, pb, eb):
                touched = True
            continue
        if o3 == 0:
            if _on_segment_collinear(ea, eb, pa):
                touched = True
            continue
        if o4 == 0:
            if _on_segment_collinear(ea, eb, pb):
                touched = True
            continue
    if not touched:
        # No boundary contact at all: with both endpoints in the closed
        # region the whole segment is interior.
        return True
    return _segment_inside_exact(pa, pb, q)


def _segment_inside_exact(pa: Point, pb: Point, q: Polygon) -> bool:
    """Exact rational subdivision: split the segment at every boundary
    contact and require every open piece's midpoint to be non-exterior."""
    ax, ay = Fraction(pa.x), Fraction(pa.y)
    bx, by = Fraction(pb.x), Fraction(pb.y)
    dx, dy = bx - ax, by - ay
    verts = [(Fraction(v.x), Fraction(v.y)) for v in q.vertices]
    params = {Fraction(0), Fraction(1)}
    n = len(verts)
    for i in range(n):
        cx, cy = verts[i]
        ex, ey = verts[(i + 1) % n]
        fx, fy = ex - cx, ey - cy
        denom = dx * fy - dy * fx
        if denom == 0:
            if (cx - ax) * dy - (cy - ay) * dx == 0:
                # Collinear overlap contributes the edge's endpoints.
                for gx, gy in ((cx, cy), (ex, ey)):
                    if dx != 0:
                        t = (gx - ax) / dx
                    elif dy != 0:
                        t = (gy - ay) / dy
                    else:
                        continue
                    if 0 <= t <= 1:
                        params.add(t)
            continue
        t = ((cx - ax) * fy - (cy - ay) * fx) / denom
        u = ((cx - ax) * dy - (cy - ay) * dx) / denom
        if 0 <= t <= 1 and 0 <= u <= 1:
            params.add(t)
    ordered = sorted(params)
    for t0, t1 in zip(ordered, ordered[1:]):
        tm = (t0 + t1) / 2
        if _pip_exact(ax + dx * tm, ay + dy * tm, verts) == EXTERIOR:
            return False
    return True


class BoundaryHit(NamedTuple):
    point: Point
    edge_index: int
    ray_t: float
    edge_u: float


def first_boundary_hit(origin: Point, direction: Point, q: Polygon) -> BoundaryHit:
    """Nearest boundary intersection strictly ahead of origin along a ray.

    The ray must enter the interior or travel along it; a ray leaving the
    closed region immediately raises RayExitsImmediatelyError.  Near-ties
    resolve toward the smaller edge index.
    """
    ox, oy = origin.x, origin.y
    dx, dy = direction.x, direction.y
    best_t = math.inf
    best = None
    for i, (ea, eb) in enumerate(q.edges):
        fx, fy = eb[0] - ea[0], eb[1] - ea[1]
        denom = dx * fy - dy * fx
        if abs(denom) < 1e-14:
            continue
        wx, wy = ea[0] - ox, ea[1] - oy
        t = (wx * fy - wy * fx) / denom
        if t <= EPS or t >= best_t - EPS:
            continue
        u = (wx * dy - wy * dx) / denom
        if u < -EPS or u > 1 + EPS:
            continue
        best_t = t
        best = (i, t, min(max(u, 0.0), 1.0))
    if best is None:
        raise RayExitsImmediatelyError(
            f"ray from {origin} along {direction} never reaches the boundary"
        )
    i, t, u = best
    for frac in (0.25, 0.5, 0.75):
        probe = Point(ox + dx * t * frac, oy + dy * t * frac)
        if (
            point_in_polygon(probe, q) == EXTERIOR
            and distance_to_boundary(probe, q) > EPS
        ):
            raise RayExitsImmediatelyError(
                f"ray from {origin} along {direction} exits the polygon immediately"
            )
    return BoundaryHit(Point(ox + dx * t, oy + dy * t), i, t, u)


def segment_within(s: Segment, q: Polygon, tol: float = EPS) -> bool:
    """Tolerant containment: s must stay within the tol-dilation of q.

    Pure floating-point, built for the engine's per-move validation: split
    the segment at approximate boundary crossings and require every piece's
    midpoint to be inside or within tol of the boundary.  Forgives slop from
    moves computed along the boundary without admitting genuine crossings.
    """
    pa, pb = s.a, s.b
    ts = [0.0, 0.5, 1.0]
    ax, ay = pa.x, pa.y
    dx, dy = pb.x - pa.x, pb.y - pa.y
    sxmin, sxmax = (pa.x, pb.x) if pa.x <= pb.x else (pb.x, pa.x)
    symin, symax = (pa.y, pb.y) if pa.y <= pb.y else (pb.y, pa.y)
    pad = 1e-6
    for (ea, eb), (exmin, eymin, exmax, eymax) in zip(q.edges, q.edge_bboxes):
        if (
            exmin > sxmax + pad
            or exmax < sxmin - pad
            or eymin > symax + pad
            or eymax < symin - pad
        ):
            continue
        fx, fy = eb[0] - ea[0], eb[1] - ea[1]
        denom = dx * fy - dy * fx
        if abs(denom) < 1e-18:
            continue
        wx, wy = ea[0] - ax, ea[1] - ay
        t = (wx * fy - wy * fx) / denom
        if t < -1e-9 or t > 1 + 1e-9:
            continue
        u = (wx * dy - wy * dx) / denom
        if -1e-9 <= u <= 1 + 1e-9:
            ts.append(min(max(t, 0.0), 1.0))
    ts.sort()
    checks = [0.0, 1.0]
    checks.extend((t0 + t1) / 2.0 for t0, t1 in zip(ts, ts[1:]) if t1 - t0 > 1e-15)
    for t in checks:
        p = Point(ax + dx * t, ay + dy * t)
        if point_in_polygon(p, q) == EXTERIOR and distance_to_boundary(p, q) > tol:
            return False
    return True


def point_within(p: Point, q: Polygon, tol: float = EPS) -> bool:
    """Tolerant point membership in the closed region."""
    if point_in_polygon(p, q) != EXTERIOR:
        return True
    return distance_to_boundary(p, q) <= tol


def nearest_boundary_edge(p: Point, q: Polygon):
    """(edge_index, distance, foot point) of the boundary point nearest p."""
    best = (0, math.inf, p)
    px, py = p.x, p.y
    for i, (ea, eb) in enumerate(q.edges):
        ax, ay = ea[0], ea[1]
        vx, vy = eb[0] - ax, eb[1] - ay
        seg2 = vx * vx + vy * vy
        t = 0.0 if seg2 == 0.0 else (px - ax) * vx / seg2 + (py - ay) * vy / seg2
        t = min(max(t, 0.0), 1.0)
        fx, fy = ax + t * vx, ay + t * vy
        d = math.hypot(px - fx, py - fy)
        if d < best[1]:
            best = (i, d, Point(fx, fy))
    return best


def distance_to_boundary(p: Point, q: Polygon) -> float:
    """Euclidean distance from p to the polygon boundary."""
    best = math.inf
    px, py = p.x, p.y
    for ea, eb in q.edges:
        ax, ay = ea[0], ea[1]
        vx, vy = eb[0] - ax, eb[1] - ay
        wx, wy = px - ax, py - ay
        seg2 = vx * vx + vy * vy
        t = 0.0 if seg2 == 0.0 else (wx * vx + wy * vy) / seg2
        if t < 0.0:
            t = 0.0
        elif t > 1.0:
            t = 1.0
        ddx, ddy = px - (ax + t * vx), py - (ay + t * vy)
        d = math.hypot(ddx, ddy)
        if d < best:
            best = d
    return best
