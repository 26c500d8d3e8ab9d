"""Adversarial and baseline evader policies.

Every policy sees the whole state (the evader has full visibility) and
must emit legal moves only.  Candidate moves come from a 64-direction fan
at 8 radii, clipped against the boundary with numpy, plus exact targets
such as vertex shadows; cheap closed-form moves are used while the pursuer
is far away.
"""

from __future__ import annotations

import math
import random
from typing import Optional

import numpy as np

from .geometry import (
    EPS,
    Point,
    Polygon,
    RayExitsImmediatelyError,
    Segment,
    first_boundary_hit,
    segment_within,
)
from .sweep import Decomposition

FAN_DIRECTIONS = 64
FAN_RADII = 8
ENGAGE_DISTANCE = 3.5
WALL_MARGIN = 1e-7

POLICY_NAMES = ("zigzag", "hider", "blocker", "escaper", "greedy", "random")


from .sweep import active_frame_index  # re-exported for policy use


class _FanGeometry:
    """Vectorized ray clipping and sight tests against one polygon."""

    def __init__(self, q: Polygon):
        verts = np.asarray(q.vertices, dtype=float)
        nxt = np.roll(verts, -1, axis=0)
        self.ax = verts[:, 0]
        self.ay = verts[:, 1]
        self.evx = nxt[:, 0] - verts[:, 0]
        self.evy = nxt[:, 1] - verts[:, 1]

    def clip_rays(self, origin: Point, dirs: np.ndarray) -> np.ndarray:
        """Distance to the first boundary hit for each unit direction."""
        ox, oy = origin.x, origin.y
        dx = dirs[:, 0][:, None]
        dy = dirs[:, 1][:, None]
        wx = self.ax[None, :] - ox
        wy = self.ay[None, :] - oy
        denom = dx * self.evy[None, :] - dy * self.evx[None, :]
        with np.errstate(divide="ignore", invalid="ignore"):
            t = (wx * self.evy[None, :] - wy * self.evx[None, :]) / denom
            u = (wx * dy - wy * dx) / denom
        valid = (np.abs(denom) > 1e-14) & (t > 1e-9) & (u >= -1e-9) & (u <= 1 + 1e-9)
        t = np.where(valid, t, np.inf)
        return t.min(axis=1)

    def segments_clear(self, origin: Point, targets: np.ndarray) -> np.ndarray:
        """Approximate per-target test that origin->target avoids crossing
        the boundary (strict crossings only; grazes count as clear)."""
        ox, oy = origin.x, origin.y
        tx = targets[:, 0][:, None]
        ty = targets[:, 1][:, None]
        bx = (self.ax + self.evx)[None, :]
        by = (self.ay + self.evy)[None, :]
        axx = self.ax[None, :]
        ayy = self.ay[None, :]
        o1 = (tx - ox) * (ayy - oy) - (ty - oy) * (axx - ox)
        o2 = (tx - ox) * (by - oy) - (ty - oy) * (bx - ox)
        o3 = (bx - axx) * (oy - ayy) - (by - ayy) * (ox - axx)
        o4 = (bx - axx) * (ty - ayy) - (by - ayy) * (tx - axx)
        tiny = 1e-12
        crossing = (o1 * o2 < -tiny) & (o3 * o4 < -tiny)
        return ~crossing.any(axis=1)


_FAN_CACHE: dict = {}


def _fan_geometry(q: Polygon) -> _FanGeometry:
    key = id(q)
    geom = _FAN_CACHE.get(key)
    if geom is None:
        if len(_FAN_CACHE) > 64:
            _FAN_CACHE.clear()
        geom = _FanGeometry(q)
        _FAN_CACHE[key] = geom
    return geom


class EvaderPolicy:
    name = "base"

    def __init__(self, seed: int = 0):
        self.rng = random.Random(seed)

    def move(self, view) -> Point:
        raise NotImplementedError

    # -- shared helpers -----------------------------------------------------

    def _clip_step(self, q: Polygon, frm: Point, direction: Point,
                   dist: float) -> float:
        if dist <= 0:
            return 0.0
        n = direction.norm()
        if n < EPS:
            return 0.0
        d = Point(direction.x / n, direction.y / n)
        try:
            hit = first_boundary_hit(frm, d, q)
            tmax = hit.ray_t - WALL_MARGIN
        except RayExitsImmediatelyError:
            return 0.0
        return max(0.0, min(dist, tmax))

    def _fan_candidates(self, view) -> np.ndarray:
        geom = _fan_geometry(view.q)
        angles = (
            np.arange(FAN_DIRECTIONS) * (2 * math.pi / FAN_DIRECTIONS)
        )
        dirs = np.stack([np.cos(angles), np.sin(angles)], axis=1)
        tmax = np.minimum(geom.clip_rays(view.evader, dirs) - WALL_MARGIN, 1.0)
        tmax = np.maximum(tmax, 0.0)
        radii = (np.arange(FAN_RADII) + 1) / FAN_RADII
        reach = tmax[:, None] * radii[None, :]
        pts = np.empty((FAN_DIRECTIONS * FAN_RADII, 2))
        pts[:, 0] = (view.evader.x + dirs[:, 0][:, None] * reach).ravel()
        pts[:, 1] = (view.evader.y + dirs[:, 1][:, None] * reach).ravel()
        return pts

    def _pick(self, view, pts: np.ndarray, scores: np.ndarray) -> Point:
        order = np.argsort(-scores, kind="stable")
        e = view.evader
        for idx in order[:12]:
            cand = Point(float(pts[idx, 0]), float(pts[idx, 1]))
            if cand.dist(e) <= 1.0 + 1e-9 and (
                cand == e
                or segment_within(Segment(e, cand, degenerate=cand == e), view.q)
            ):
                return cand
        return e


class ZigzagEvader(EvaderPolicy):
    """Full-speed horizontal runs, reversing at the boundary."""

    name = "zigzag"

    def __init__(self, seed: int = 0):
        super().__init__(seed)
        self.sign = 1

    def move(self, view) -> Point:
        k = active_frame_index(view.dec, view.evader)
        h = view.dec.spans[k].frame.horizontal
        d = Point(h.x * self.sign, h.y * self.sign)
        step = self._clip_step(view.q, view.evader, d, 1.0)
        if step < 1.0 - 1e-9:
            self.sign = -self.sign
        if step <= 1e-9:
            return view.evader
        return Point(view.evader.x + d.x * step, view.evader.y + d.y * step)


class GreedyDistanceEvader(EvaderPolicy):
    """Maximize the post-move distance to the pursuer."""

    name = "greedy"

    def move(self, view) -> Point:
        e, p = view.evader, view.pursuer
        d = e.dist(p)
        if d > ENGAGE_DISTANCE:
            away = Point(e.x - p.x, e.y - p.y)
            step = self._clip_step(view.q, e, away, 1.0)
            if step > 0.25:
                n = away.norm()
                return Point(e.x + away.x / n * step, e.y + away.y / n * step)
        pts = self._fan_candidates(view)
        scores = np.hypot(pts[:, 0] - p.x, pts[:, 1] - p.y)
        return self._pick(view, pts, scores)


class RandomEvader(EvaderPolicy):
    name = "random"

    def move(self, view) -> Point:
        e = view.evader
        for _ in range(6):
            ang = self.rng.uniform(0, 2 * math.pi)
            r = self.rng.uniform(0.2, 1.0)
            d = Point(math.cos(ang), math.sin(ang))
            step = self._clip_step(view.q, e, d, r)
            if step > 1e-6:
                cand = Point(e.x + d.x * step, e.y + d.y * step)
                if segment_within(Segment(e, cand), view.q):
                    return cand
        return e


class ScriptedEvader(EvaderPolicy):
    """Plays a fixed list of absolute targets, then holds position."""

    name = "scripted"

    def __init__(self, targets, seed: int = 0):
        super().__init__(seed)
        self.targets = [Point(*t) for t in targets]
        self.i = 0

    def move(self, view) -> Point:
        if self.i >= len(self.targets):
            return view.evader
        t = self.targets[self.i]
        self.i += 1
        return t


class HiderEvader(EvaderPolicy):
    """Seeks reflex-vertex shadows that break the pursuer's sight line."""

    name = "hider"

    def move(self, view) -> Point:
        e, p, q = view.evader, view.pursuer, view.q
        if e.dist(p) > ENGAGE_DISTANCE:
            return GreedyDistanceEvader.move(self, view)
        geom = _fan_geometry(q)
        pts = [self._fan_candidates(view)]
        shadows = self._shadow_targets(view)
        if shadows:
            pts.append(np.asarray(shadows))
        allpts = np.concatenate(pts, axis=0)
        clear = geom.segments_clear(p, allpts)
        dist_p = np.hypot(allpts[:, 0] - p.x, allpts[:, 1] - p.y)
        scores = np.where(~clear, 1000.0 + dist_p, dist_p)
        return self._pick(view, allpts, scores)

    def _shadow_targets(self, view):
        e, p, q = view.evader, view.pursuer, view.q
        out = []
        for v in q.vertices:
            if v.dist(e) > 1.6:
                continue
            d = v - p
            n = d.norm()
            if n < EPS:
                continue
            u = Point(d.x / n, d.y / n)
            for back in (0.2, 0.45):
                for side in (-0.15, 0.0, 0.15):
                    cand = Point(
                        v.x + u.x * back - u.y * side,
                        v.y + u.y * back + u.x * side,
                    )
                    if cand.dist(e) <= 1.0:
                        out.append((cand.x, cand.y))
        return out


class BlockerEvader(EvaderPolicy):
    """Seeks moves whose horizontal rook response hits the boundary."""

    name = "blocker"
    rightward_only = False

    def move(self, view) -> Point:
        e, p, q = view.evader, view.pursuer, view.q
        if e.dist(p) > ENGAGE_DISTANCE:
            return GreedyDistanceEvader.move(self, view)
        geom = _fan_geometry(q)
        pts = self._fan_candidates(view)
        k = active_frame_index(view.dec, p)
        frame = view.dec.spans[k].frame
        hx, hy = frame.horizontal
        xs = (pts[:, 0] - p.x) * hx + (pts[:, 1] - p.y) * hy
        # Predicted tracking response: the pursuer re-establishes the half
        # offset on her frontier level toward the candidate.
        side = np.where(xs >= 0, 1.0, -1.0)
        resp = np.clip(xs - 0.5 * side, -1.0, 1.0)
        rx = p.x + hx * resp
        ry = p.y + hy * resp
        responses = np.stack([rx, ry], axis=1)
        blocked = ~geom.segments_clear(p, responses)
        dist_p = np.hypot(pts[:, 0] - p.x, pts[:, 1] - p.y)
        scores = np.where(blocked, 1000.0 + dist_p, dist_p)
        if self.rightward_only:
            scores = np.where(xs > 0.1, scores + 500.0, scores)
        return self._pick(view, pts, scores)


class EscaperEvader(BlockerEvader):
    """Chute specialist: prefers rightward moves that obstruct the response."""

    name = "escaper"
    rightward_only = True


def make_policy(name: str, seed: int = 0, targets=None) -> EvaderPolicy:
    if name == "zigzag":
        return ZigzagEvader(seed)
    if name == "greedy":
        return GreedyDistanceEvader(seed)
    if name == "random":
        return RandomEvader(seed)
    if name == "hider":
        return HiderEvader(seed)
    if name == "blocker":
        return BlockerEvader(seed)
    if name == "escaper":
        return EscaperEvader(seed)
    if name == "scripted":
        return ScriptedEvader(targets or [], seed)
    raise ValueError(f"unknown evader policy {name!r}")
