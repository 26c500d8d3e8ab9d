"""Independent exact-rational reference for containment and visibility.

Deliberately separate from the package implementation.  Inputs must be
dyadic rationals (exact multiples of 2**-k for some k <= 40, which the
test generators guarantee); everything is then scaled to integers and all
decisions are made with exact integer arithmetic.  Points are classified
by a +y-ray crossing rule; a segment is declared inside exactly when the
pieces cut by every boundary contact all have non-exterior midpoints.
"""

from __future__ import annotations

from fractions import Fraction

OUT = 0
ON = 1
IN = 2

_MAX_SHIFT = 40


def _to_int(x: float, scale: int) -> int:
    v = x * scale
    iv = int(round(v))
    if v != iv:
        raise ValueError(f"{x} is not an exact multiple of 1/{scale}")
    return iv


def _common_scale(values) -> int:
    scale = 1
    for _ in range(_MAX_SHIFT + 1):
        if all((v * scale) == int(round(v * scale)) for v in values):
            return scale
        scale *= 2
    raise ValueError("coordinates are not on a dyadic grid")


class RationalPolygonOracle:
    def __init__(self, vertices):
        coords = [c for v in vertices for c in (float(v[0]), float(v[1]))]
        self.scale = _common_scale(coords)
        self.verts = [
            (_to_int(float(x), self.scale), _to_int(float(y), self.scale))
            for x, y in vertices
        ]
        self.n = len(self.verts)

    def _scale_point(self, x, y, extra: int = 1):
        s = self.scale * extra
        return _to_int(float(x), self.scale) * extra, _to_int(float(y), self.scale) * extra, s

    def classify_point(self, x, y) -> int:
        px, py = _to_int(float(x), self.scale), _to_int(float(y), self.scale)
        return self._classify_scaled(px, py, 1)

    def _classify_scaled(self, pxn: int, pyn: int, d: int) -> int:
        """Classify the rational point (pxn/d, pyn/d) against scaled verts."""
        crossings = 0
        n = self.n
        verts = self.verts
        for i in range(n):
            ax, ay = verts[i]
            bx, by = verts[(i + 1) % n]
            axd, ayd, bxd, byd = ax * d, ay * d, bx * d, by * d
            det = (bxd - axd) * (pyn - ayd) - (byd - ayd) * (pxn - axd)
            if det == 0 and min(axd, bxd) <= pxn <= max(axd, bxd) and min(
                ayd, byd
            ) <= pyn <= max(ayd, byd):
                return ON
            if (axd > pxn) != (bxd > pxn):
                if bxd > axd:
                    above = det > 0
                else:
                    above = det < 0
                if above:
                    crossings += 1
        return IN if crossings % 2 == 1 else OUT

    def segment_fully_inside(self, a, b) -> bool:
        ax, ay = _to_int(float(a[0]), self.scale), _to_int(float(a[1]), self.scale)
        bx, by = _to_int(float(b[0]), self.scale), _to_int(float(b[1]), self.scale)
        if self._classify_scaled(ax, ay, 1) == OUT:
            return False
        if self._classify_scaled(bx, by, 1) == OUT:
            return False
        if (ax, ay) == (bx, by):
            return True
        dx, dy = bx - ax, by - ay
        cuts = {Fraction(0), Fraction(1)}
        n = self.n
        verts = self.verts
        for i in range(n):
            cx, cy = verts[i]
            ex, ey = verts[(i + 1) % n]
            fx, fy = ex - cx, ey - cy
            denom = dx * fy - dy * fx
            wx, wy = cx - ax, cy - ay
            if denom == 0:
                if wx * dy - wy * dx != 0:
                    continue
                for gx, gy in ((cx, cy), (ex, ey)):
                    if dx != 0:
                        tn, td = gx - ax, dx
                    else:
                        tn, td = gy - ay, dy
                    if td < 0:
                        tn, td = -tn, -td
                    if 0 <= tn <= td:
                        cuts.add(Fraction(tn, td))
                continue
            tn = wx * fy - wy * fx
            un = wx * dy - wy * dx
            if denom < 0:
                tn, un, denom = -tn, -un, -denom
            if 0 <= tn <= denom and 0 <= un <= denom:
                cuts.add(Fraction(tn, denom))
        ordered = sorted(cuts)
        for t0, t1 in zip(ordered, ordered[1:]):
            tm = (t0 + t1) / 2
            d = tm.denominator
            pxn = ax * d + dx * tm.numerator
            pyn = ay * d + dy * tm.numerator
            if self._classify_scaled(pxn, pyn, d) == OUT:
                return False
        return True


def line_polygon_interval_count(vertices, anchor, direction) -> int:
    """Exact count of maximal sub-segments of the given full line inside the
    closed polygon.  Pure-Fraction brute force, used as the monotone /
    scallop sweep oracle (one interval per sweep position = sweepable)."""
    ax, ay = Fraction(float(anchor[0])), Fraction(float(anchor[1]))
    dx, dy = Fraction(float(direction[0])), Fraction(float(direction[1]))
    verts = [(Fraction(float(p[0])), Fraction(float(p[1]))) for p in vertices]
    n = len(verts)
    cuts = set()
    for i in range(n):
        cx, cy = verts[i]
        ex, ey = verts[(i + 1) % n]
        fx, fy = ex - cx, ey - cy
        denom = dx * fy - dy * fx
        wx, wy = cx - ax, cy - ay
        if denom == 0:
            if wx * dy - wy * dx == 0:
                for gx, gy in ((cx, cy), (ex, ey)):
                    t = (gx - ax) / dx if dx != 0 else (gy - ay) / dy
                    cuts.add(t)
            continue
        t = (wx * fy - wy * fx) / denom
        u = (wx * dy - wy * dx) / denom
        if 0 <= u <= 1:
            cuts.add(t)
    if not cuts:
        return 0
    ordered = sorted(cuts)
    # Classify each gap between consecutive cut parameters by its midpoint.
    probe_cls = []
    for t0, t1 in zip(ordered, ordered[1:]):
        tm = (t0 + t1) / 2
        px, py = ax + dx * tm, ay + dy * tm
        probe_cls.append(_classify_fraction_point(px, py, verts))
    intervals = 0
    in_prev = False
    for cls in probe_cls:
        inside = cls != OUT
        if inside and not in_prev:
            intervals += 1
        in_prev = inside
    return intervals


def _classify_fraction_point(px: Fraction, py: Fraction, verts) -> int:
    crossings = 0
    n = len(verts)
    for i in range(n):
        ax, ay = verts[i]
        bx, by = verts[(i + 1) % n]
        det = (bx - ax) * (py - ay) - (by - ay) * (px - ax)
        if det == 0 and min(ax, bx) <= px <= max(ax, bx) and min(ay, by) <= py <= max(ay, by):
            return ON
        if (ax > px) != (bx > px):
            if (det > 0) if bx > ax else (det < 0):
                crossings += 1
    return IN if crossings % 2 == 1 else OUT


def sweep_is_single_interval(vertices, lines) -> bool:
    """Brute-force sweepability check over the given (anchor, direction) lines."""
    return all(
        line_polygon_interval_count(vertices, a, d) <= 1 for a, d in lines
    )
