"""Deterministic pursuer controller.

One strategy instance drives one game.  Per turn the engine feeds it an
Observation (the evader's position only when the sight line is clear) and
receives the pursuer's move.

Mode machine:

* SEARCH      - walk the search path, halting at vertex abscissae and
                transition lines, until rook position is attained.
* ROOK        - guard the horizontal frontier through the pursuer and
                advance it: capture on frontier crossings and close
                approaches, climb under a vanished evader, take the
                half-offset step toward a near-horizontal evader, track a
                fleeing one.  Obstructed responses are gambits.
* CAUTIOUS    - search along a fresh path after a hide/block recovery while
                still watching the old rook frame, reverting to it the
                moment the evader crosses back.

All rook arithmetic happens in a canonical orientation with the evader
"up": the active frame's vertical is sign-flipped as needed, left/right
are never mirrored.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field, replace
from typing import NamedTuple, Optional

from .geometry import (
    EPS,
    Point,
    Polygon,
    RayExitsImmediatelyError,
    Segment,
    first_boundary_hit,
    segment_within,
)
from .searchpath import (
    AUXILIARY,
    CHAIN,
    CHECKPOINT,
    DESCENT,
    Checkpoint,
    SearchPath,
    build_search_path,
)
from .sweep import Decomposition, Frame, FrameSpan, frame_from_vertical

SQRT3_2 = math.sqrt(3.0) / 2.0

SEARCH = "search"
ROOK = "rook"
CAUTIOUS_SEARCH = "cautious-search"

GAMBIT_NONE = "none"
GAMBIT_HIDING = "hiding"
GAMBIT_BLOCKING = "blocking"
GAMBIT_ESCAPE = "escape"


class IllegalStateError(AssertionError):
    """A strategy invariant broke: implementation bug, not a game outcome."""


class Observation(NamedTuple):
    evader_visible: bool
    evader_position: Optional[Point]

    @property
    def position(self) -> Point:
        if not self.evader_visible or self.evader_position is None:
            raise IllegalStateError("read of a hidden evader position")
        return self.evader_position


@dataclass(frozen=True)
class RookContext:
    dx: float
    dy: float
    rook_class: str  # e.g. "upper-pocket-left"


@dataclass(frozen=True)
class GambitReport:
    kind: str = GAMBIT_NONE
    vertex: Optional[int] = None  # hiding vertex
    point: Optional[Point] = None  # blocking / escape obstruction


@dataclass
class RookView:
    """Canonically oriented rook frame: the evader is always 'up'."""

    base: Frame
    vsign: int  # +1: evader above the base frame's horizontal, -1 below
    span_index: int

    def x(self, p: Point) -> float:
        return self.base.x(p)

    def y(self, p: Point) -> float:
        return self.vsign * self.base.y(p)

    def offset(self, p: Point, dx: float, dy: float) -> Point:
        h, v = self.base.horizontal, self.base.vertical
        vy = dy * self.vsign
        return Point(p.x + dx * h.x + vy * v.x, p.y + dx * h.y + vy * v.y)


@dataclass
class _HideResponse:
    vertex: int
    vertex_point: Point
    rook: RookView
    last_seen: Point


@dataclass
class _CautiousState:
    old_rook: RookView
    old_last_seen: Point
    side: int  # side of the old vertical the evader is confined to


@dataclass
class _DescentRecovery:
    """Lower-chute escape: ride the sweep line down to the search path."""

    target_s: float
    old_rook: RookView
    line_frame: Frame  # sweep line through the blocking point as vertical


def classify_rook_position(dec: Decomposition, rv: RookView, pursuer: Point,
                           evader: Point) -> RookContext:
    """Eight-way rook taxonomy: pocket vs chute by the chains holding the
    frontier endpoints, upper/lower by the evader's side, and offset sign."""
    from .searchpath import ChainIndex

    q = dec.polygon
    h = rv.base.horizontal
    ci = ChainIndex(dec)
    span = dec.spans[min(rv.span_index, len(dec.spans) - 1)]
    lower_chain = ci.frame_lower_chain(span)

    def chain_at(direction):
        try:
            hit = first_boundary_hit(pursuer, direction, q)
        except RayExitsImmediatelyError:
            from .geometry import nearest_boundary_edge

            edge, _d, _f = nearest_boundary_edge(pursuer, q)
            return ci.chain_of_edge(edge)
        return ci.chain_of_edge(hit.edge_index)

    right_chain = chain_at(h)
    left_chain = chain_at(Point(-h.x, -h.y))
    dy = rv.base.y(evader) - rv.base.y(pursuer)
    dx = rv.base.x(pursuer) - rv.base.x(evader)
    evader_above = dy >= 0
    e_side = ("B" if lower_chain == "A" else "A") if evader_above else lower_chain
    vertical_word = "upper" if evader_above else "lower"
    if left_chain == e_side and right_chain == e_side:
        shape = "pocket"
    else:
        shape = "chute"
    offset = "left" if dx <= 0 else "right"
    return RookContext(dx, dy, f"{vertical_word}-{shape}-{offset}")


class PursuerStrategy:
    def __init__(self, dec: Decomposition, capture_radius: float = 1.0):
        self.dec = dec
        self.q: Polygon = dec.polygon
        self.capture_radius = capture_radius
        self.pos: Point = dec.polygon.vertices[dec.start_vertex]
        self.mode = SEARCH
        self.frame_idx = 0  # headway counter, never decreases
        self.path: SearchPath = build_search_path(dec, self.pos, 0, None)
        self.s = 0.0
        self.rook: Optional[RookView] = None
        self.last_seen: Optional[Point] = None
        self.hide: Optional[_HideResponse] = None
        self.cautious: Optional[_CautiousState] = None
        self.descent_recovery: Optional[_DescentRecovery] = None
        self.last_gambit = GambitReport()
        self.last_frontier_advance = 0.0
        self.checkpoint: Optional[Checkpoint] = None
        self.mode_switches = 0
        self.end_point = dec.polygon.vertices[dec.end_vertex]

    # -- public API -----------------------------------------------------------

    def step(self, obs: Observation) -> Point:
        self.last_gambit = GambitReport()
        self.last_frontier_advance = 0.0
        # Capture precedence: a clear step toward a visible evader within
        # reach ends the game, whatever the current bookkeeping says.
        grab = self._capture_step(obs)
        if grab is not None:
            self.pos = grab
            return grab
        if self.mode == ROOK:
            move = self._rook_turn(obs)
        elif self.mode == CAUTIOUS_SEARCH:
            move = self._cautious_turn(obs)
        else:
            move = self._search_turn(obs)
        if move.dist(self.pos) > 1.0 + 1e-6:
            raise IllegalStateError(
                f"move longer than unit speed: {self.pos} -> {move}"
            )
        self.pos = move
        return move

    # -- helpers ----------------------------------------------------------

    def _capture_step(self, obs: Observation) -> Optional[Point]:
        if not obs.evader_visible:
            return None
        e = obs.position
        d = self.pos.dist(e)
        if d > 1.0 + self.capture_radius + EPS:
            return None
        self.last_seen = e
        if d <= 1.0:
            target = e
        else:
            t = 1.0 / d
            target = Point(
                self.pos.x + (e.x - self.pos.x) * t,
                self.pos.y + (e.y - self.pos.y) * t,
            )
        if not self._clear_move(target):
            return None  # stale geometry; fall through to the mode logic
        return target

    def _span(self) -> FrameSpan:
        return self.dec.spans[self.frame_idx]

    def _advance_frame_to(self, k: int):
        if k < self.frame_idx:
            raise IllegalStateError(
                f"headway regression: frame {self.frame_idx} -> {k}"
            )
        self.frame_idx = k

    def _switch(self, mode: str):
        if mode != self.mode:
            self.mode_switches += 1
        self.mode = mode

    def _clear_move(self, target: Point) -> bool:
        return segment_within(
            Segment(self.pos, target, degenerate=self.pos == target), self.q
        )

    def _first_obstruction(self, target: Point):
        """First boundary hit along pos->target (the move must be blocked)."""
        from .geometry import BoundaryHit, nearest_boundary_edge

        d = target - self.pos
        n = d.norm()
        if n < EPS:
            return None
        try:
            hit = first_boundary_hit(self.pos, Point(d.x / n, d.y / n), self.q)
        except RayExitsImmediatelyError:
            # Already against the wall: the obstruction is right here.
            edge, _dist, foot = nearest_boundary_edge(self.pos, self.q)
            return BoundaryHit(foot, edge, 0.0, 0.0)
        if hit.ray_t >= n - EPS:
            return None
        return hit

    def _rebuild_path(self, start: Point, frame_hint: int):
        cp = self.checkpoint
        self.path = build_search_path(self.dec, start, frame_hint, cp)
        self.s = 0.0
        self.frame_idx = max(self.frame_idx, frame_hint)

    # -- search mode ------------------------------------------------------

    def _search_turn(self, obs: Observation) -> Point:
        from .sweep import active_frame_index

        arc = self.path.arcs[self.path.arc_at(self.s)]
        # Chain climbs can cross several spoke domains, so judge the evader
        # in the frame of the pursuer's actual position, never a stale one.
        k = max(self.frame_idx, active_frame_index(self.dec, self.pos))
        self._advance_frame_to(k)
        span = self.dec.spans[k]
        frame = span.frame
        p = self.pos

        if obs.evader_visible:
            e = obs.position
            self.last_seen = e
            if p.dist(e) <= 1.0 + EPS and self._clear_move(e):
                return e  # capture
            xe, xp = frame.x(e), frame.x(p)
            if arc.kind != DESCENT:
                if 0.0 <= xe - xp <= 0.5 + EPS:
                    self._enter_rook(span, e, frame)
                    return p  # hold; rook play starts next turn
                if xe < xp - EPS:
                    # The evader slipped left past the pursuer: align under
                    # him, or chase along the clear sight line when a wall
                    # separates the verticals.
                    target = self._horizontal_align(frame, e)
                    if target is not None:
                        self._enter_rook(span, e, frame)
                        return target
                    return self._chase_step(e)
            else:
                rv = self._descent_rook_check(arc, e)
                if rv is not None:
                    self._enter_rook_view(rv, e)
                    return p

        # Advance along the path.
        return self._path_advance(obs, frame)

    def _horizontal_align(self, frame: Frame, e: Point) -> Optional[Point]:
        p = self.pos
        dx = frame.x(e) - frame.x(p)
        step = max(dx, -1.0)
        h = frame.horizontal
        target = Point(p.x + step * h.x, p.y + step * h.y)
        if not self._clear_move(target):
            return None
        return target

    def _chase_step(self, e: Point) -> Point:
        p = self.pos
        d = p.dist(e)
        if d <= 1.0:
            return e
        t = 1.0 / d
        target = Point(p.x + (e.x - p.x) * t, p.y + (e.y - p.y) * t)
        if not self._clear_move(target):
            raise IllegalStateError("chase step along a clear sight line blocked")
        return target

    def _path_advance(self, obs: Observation, frame: Frame) -> Point:
        p = self.pos
        path = self.path
        total = path.total_length()
        if self.s >= total - EPS:
            return p  # at the path end; wait (rook will trigger eventually)
        s_stop = path.next_stop(self.s)
        limit = min(s_stop, self.s + 1.0)
        if obs.evader_visible:
            e = obs.position
            cap = frame.x(e) - 0.5
            x_here = frame.x(p)
            if cap <= x_here + EPS:
                limit = self.s  # hold position, do not pass the evader
            else:
                # Binary-search the path piece for the x cap (the piece is
                # straight, x affine along it).
                s_lo, s_hi = self.s, limit
                x_hi = frame.x(path.point_at(s_hi))
                if x_hi > cap + EPS:
                    for _ in range(40):
                        mid = (s_lo + s_hi) / 2
                        if frame.x(path.point_at(mid)) <= cap:
                            s_lo = mid
                        else:
                            s_hi = mid
                    limit = s_lo
        target = path.point_at(limit)
        if target.dist(p) > 1.0 + EPS:
            raise IllegalStateError("path advance longer than unit")
        if limit > self.s + 1e-12 and not self._clear_move(target):
            raise IllegalStateError(
                f"search move blocked: {p} -> {target} (s={self.s})"
            )
        self.s = limit
        # Record checkpoint progress from passed marks.
        for ms, mark in self.path.marks:
            if ms <= self.s + 1e-9 and mark.kind == CHECKPOINT:
                self.checkpoint = mark
        return target

    def _descent_rook_check(self, arc, e: Point) -> Optional[RookView]:
        """While descending a transition line, watch both frames."""
        dec = self.dec
        new_span = dec.spans[arc.frame_index]
        old_span = dec.spans[arc.prev_frame_index]
        p = self.pos
        for span in (new_span, old_span):
            f = span.frame
            dx = f.x(e) - f.x(p)
            if abs(dx) <= 0.5 + EPS:
                vsign = 1 if f.y(e) >= f.y(p) else -1
                return RookView(f.with_origin(p), vsign, span.frame.index)
        # Region-A tilt: evader left of the new vertical by more than 1/2
        # while right of the old one; pick the sight line as vertical.
        f_new, f_old = new_span.frame, old_span.frame
        if (
            f_new.x(e) - f_new.x(p) < -0.5
            and f_old.x(e) - f_old.x(p) > 0.5
            and p.dist(e) > EPS
        ):
            vert = (e - p).normalized()
            tilted = frame_from_vertical(
                new_span.frame.index, p, vert, kind=f_new.kind,
                center=f_new.center,
            )
            return RookView(tilted, 1, new_span.frame.index)
        return None

    # -- rook mode ----------------------------------------------------------

    def _enter_rook(self, span: FrameSpan, e: Point, frame: Frame):
        vsign = 1 if frame.y(e) >= frame.y(self.pos) else -1
        rv = RookView(frame.with_origin(self.pos), vsign, frame.index)
        self._enter_rook_view(rv, e)

    def _enter_rook_view(self, rv: RookView, e: Point):
        self.rook = rv
        self.last_seen = e
        self.hide = None
        self._switch(ROOK)

    def _rook_turn(self, obs: Observation) -> Point:
        if self.hide is not None:
            return self._hide_response_turn(obs)
        if self.descent_recovery is not None:
            return self._descent_recovery_turn(obs)
        rv = self.rook
        move, gambit = self._rook_ladder(rv, obs)
        if gambit.kind == GAMBIT_NONE:
            return move
        self.last_gambit = gambit
        return self._respond_to_gambit(rv, obs, gambit)

    def _rook_ladder(self, rv: RookView, obs: Observation):
        """One rook move in the canonical orientation, or a gambit report."""
        p = self.pos
        y_p = rv.y(p)
        prev = self.last_seen
        if prev is None:
            raise IllegalStateError("rook mode without a last-seen position")

        if not obs.evader_visible:
            # Climb to just under the evader's previous spot; in spoke
            # frames a failed climb is a hiding gambit.
            dx = rv.x(prev) - rv.x(p)
            if abs(dx) > 0.5 + 1e-6:
                raise IllegalStateError(f"rook offset {dx} beyond 1/2 while hidden")
            dx = max(-1.0, min(1.0, dx))
            climb = math.sqrt(max(1.0 - dx * dx, 0.0))
            target = rv.offset(p, dx, climb)
            if self._clear_move(target):
                self.last_frontier_advance = climb
                # The evader is presumed just above; keep his last x.
                self.last_seen = rv.offset(target, 0.0, 0.75)
                return target, GambitReport()
            v = self._hiding_vertex(prev)
            return p, GambitReport(GAMBIT_HIDING, vertex=v)

        e = obs.position
        self.last_seen = e
        y_e = rv.y(e)
        # Frontier crossing: intercept on the frontier line.
        if y_e <= y_p + EPS:
            z = self._frontier_crossing(rv, prev, e)
            if z is not None and self._clear_move(z):
                return z, GambitReport()
            # Crossing out of the guarded span: treat as an escape past the
            # frontier endpoint.
            hit = self._first_obstruction(z if z is not None else e)
            zpt = hit.point if hit else e
            return p, self._classify_block(rv, zpt, hit)
        # Close approach: move straight at him.
        if y_e - y_p <= SQRT3_2 + EPS:
            d = p.dist(e)
            if d <= 1.0 + EPS:
                return e, GambitReport()
            step = 1.0 / d
            target = Point(p.x + (e.x - p.x) * step, p.y + (e.y - p.y) * step)
            if not self._clear_move(target):
                raise IllegalStateError("guard move blocked in pocket")
            self.last_frontier_advance = rv.y(target) - y_p
            return target, GambitReport()
        dx = rv.x(e) - rv.x(p)
        ext_l, ext_r, _hl, _hr = self._frontier_extent(rv)
        x_e = rv.x(e)
        # When the evader is still within the frontier's span, a pinched
        # pocket may push the offset foot outside: the wall then plays the
        # role of the offset.  Beyond the span the natural blockage of the
        # response is a gambit.
        evader_in_span = ext_l - EPS <= x_e <= ext_r + EPS
        if abs(dx) <= 1.0 + EPS:
            alpha = x_e - (0.5 if dx >= 0 else -0.5)
            if evader_in_span:
                alpha = max(ext_l, min(ext_r, alpha))
            target = self._half_offset_step(rv, e, alpha)
            if target is not None and self._clear_move(target):
                self.last_frontier_advance = rv.y(target) - y_p
                return target, GambitReport()
            # The offset-foot segment is obstructed; the literal move is
            # still the highest reachable point on the vertical x = alpha,
            # which survives wall-pressed positions.
            clipped = self._highest_on_vertical(rv, alpha)
            if (
                clipped is not None
                and rv.y(clipped) > y_p + EPS
                and self._clear_move(clipped)
            ):
                self.last_frontier_advance = rv.y(clipped) - y_p
                return clipped, GambitReport()
            hit = self._first_obstruction(target if target is not None else e)
            zpt = hit.point if hit else e
            if zpt.dist(p) <= 1e-7:
                # Degenerate obstruction at the pursuer's own corner: the
                # escape response would not move, so climb instead.
                move = self._climb_any_vertical(rv, (x_e, rv.x(p)), y_p)
                if move is not None:
                    return move, GambitReport()
            return p, self._classify_block(rv, zpt, hit)
        # Track: re-establish the half offset toward the evader.
        alpha = x_e - (0.5 if dx > 0 else -0.5)
        if evader_in_span:
            alpha = max(ext_l, min(ext_r, alpha))
        h = alpha - rv.x(p)
        h = max(-1.0, min(1.0, h))
        climb = math.sqrt(max(1.0 - h * h, 0.0))
        target = rv.offset(p, h, climb)
        if self._clear_move(target):
            self.last_frontier_advance = climb
            return target, GambitReport()
        clipped = self._highest_on_vertical(rv, alpha)
        if (
            clipped is not None
            and rv.y(clipped) >= y_p - EPS
            and self._clear_move(clipped)
        ):
            self.last_frontier_advance = rv.y(clipped) - y_p
            return clipped, GambitReport()
        hit = self._first_obstruction(target)
        zpt = hit.point if hit else target
        if zpt.dist(p) <= 1e-7:
            move = self._climb_any_vertical(rv, (rv.x(p),), y_p)
            if move is not None:
                return move, GambitReport()
        return p, self._classify_block(rv, zpt, hit)

    def _frontier_crossing(self, rv: RookView, prev: Point, e: Point):
        """Point where the evader's move met the frontier line."""
        y0 = rv.y(prev) - rv.y(self.pos)
        y1 = rv.y(e) - rv.y(self.pos)
        if y1 > EPS:
            return None
        if abs(y0 - y1) < 1e-12:
            return e
        t = y0 / (y0 - y1)
        t = min(max(t, 0.0), 1.0)
        return Point(prev.x + (e.x - prev.x) * t, prev.y + (e.y - prev.y) * t)

    def _frontier_extent(self, rv: RookView):
        """Rook-x range of the frontier chord through the pursuer."""
        p = self.pos
        h = rv.base.horizontal
        x_p = rv.x(p)
        try:
            hit_r = first_boundary_hit(p, h, self.q)
            ext_r = x_p + hit_r.ray_t
        except RayExitsImmediatelyError:
            hit_r, ext_r = None, x_p
        try:
            hit_l = first_boundary_hit(p, Point(-h.x, -h.y), self.q)
            ext_l = x_p - hit_l.ray_t
        except RayExitsImmediatelyError:
            hit_l, ext_l = None, x_p
        return ext_l, ext_r, hit_l, hit_r

    def _half_offset_step(self, rv: RookView, e: Point, alpha: float):
        """Unit step onto the segment from the frontier foot to the evader."""
        p = self.pos
        z = rv.offset(p, alpha - rv.x(p), 0.0)
        # Largest point on z->e within unit distance of p.
        vx, vy = e.x - z.x, e.y - z.y
        wx, wy = z.x - p.x, z.y - p.y
        a = vx * vx + vy * vy
        b = 2 * (vx * wx + vy * wy)
        c = wx * wx + wy * wy - 1.0
        if a < 1e-18:
            return e if c <= 0 else None
        disc = b * b - 4 * a * c
        if disc < 0:
            return None
        t = (-b + math.sqrt(disc)) / (2 * a)
        if t >= 1.0:
            return e  # whole segment reachable: take the capture
        if t <= 0.0:
            return None
        return Point(z.x + vx * t, z.y + vy * t)

    def _climb_any_vertical(self, rv: RookView, alphas, y_p: float):
        for ax in alphas:
            clipped = self._highest_on_vertical(rv, ax)
            if (
                clipped is not None
                and rv.y(clipped) > y_p + EPS
                and self._clear_move(clipped)
            ):
                self.last_frontier_advance = rv.y(clipped) - y_p
                return clipped
        return None

    def _highest_on_vertical(self, rv: RookView, alpha: float):
        """Highest reachable point on the vertical x = alpha: the reachable
        stretch need not start at the frontier (a wall wedge may block the
        foot), so scan heights from the top down."""
        p = self.pos
        h = max(-1.0, min(1.0, alpha - rv.x(p)))
        climb = math.sqrt(max(1.0 - h * h, 0.0))
        for k in range(16, -1, -1):
            cand = rv.offset(p, h, climb * k / 16.0)
            if self._clear_move(cand):
                return cand
        return None

    def _chain_of_edge_side(self, rv: RookView, edge_index: int) -> str:
        """'same' when the obstructing edge is on the evader-side chain."""
        from .searchpath import ChainIndex

        ci = ChainIndex(self.dec)
        which = ci.chain_of_edge(edge_index)
        span = self.dec.spans[min(rv.span_index, len(self.dec.spans) - 1)]
        lower = ci.frame_lower_chain(span)
        is_lower_chain = which == lower
        evader_up_is_frame_up = rv.vsign > 0
        if evader_up_is_frame_up:
            return "same" if not is_lower_chain else "opposite"
        return "same" if is_lower_chain else "opposite"

    def _classify_block(self, rv: RookView, zpt: Point, hit) -> GambitReport:
        if hit is None:
            return GambitReport(GAMBIT_ESCAPE, point=zpt)
        side = self._chain_of_edge_side(rv, hit.edge_index)
        kind = GAMBIT_BLOCKING if side == "same" else GAMBIT_ESCAPE
        return GambitReport(kind, point=hit.point)

    def _hiding_vertex(self, prev: Point) -> Optional[int]:
        """Vertex of the first blocking feature along the stale sight line."""
        p = self.pos
        d = prev - p
        n = d.norm()
        if n < EPS:
            return None
        try:
            hit = first_boundary_hit(p, Point(d.x / n, d.y / n), self.q)
        except RayExitsImmediatelyError:
            return None
        a, b = self.q.edges[hit.edge_index]
        # The hiding vertex is whichever edge endpoint pokes toward the
        # sight line's far side.
        va = hit.edge_index
        vb = (hit.edge_index + 1) % self.q.n
        da = abs((self.q.vertices[va] - p).cross(d) / n)
        db = abs((self.q.vertices[vb] - p).cross(d) / n)
        return va if da <= db else vb

    # -- gambit responses ---------------------------------------------------

    def _respond_to_gambit(self, rv: RookView, obs: Observation,
                           gambit: GambitReport) -> Point:
        span = self.dec.spans[min(rv.span_index, len(self.dec.spans) - 1)]
        monotone_family = span.frame.kind == "monotone"
        if gambit.kind == GAMBIT_HIDING:
            if monotone_family:
                raise IllegalStateError("hiding gambit inside a monotone frame")
            v = gambit.vertex
            self.hide = _HideResponse(
                v, self.q.vertices[v], rv, self.last_seen
            )
            return self._hide_response_turn(obs)
        z = gambit.point
        step = z if z is not None else self.pos
        if step.dist(self.pos) > 1.0:
            d = step - self.pos
            n = d.norm()
            step = Point(self.pos.x + d.x / n, self.pos.y + d.y / n)
        if not self._clear_move(step):
            raise IllegalStateError("gambit response step blocked")
        if monotone_family:
            # Move to the obstruction and restart the search there.
            self._switch(SEARCH)
            self.rook = None
            self._rebuild_path(step, self.frame_idx)
            return step
        if gambit.kind == GAMBIT_BLOCKING:
            self._enter_cautious(rv, step)
            return step
        # Escape in a scallop-family frame.
        return self._scallop_escape(rv, obs, step)

    def _enter_cautious(self, rv: RookView, z: Point):
        e = self.last_seen
        side = -1 if rv.x(e) < rv.x(z) else 1
        self.cautious = _CautiousState(rv, e, side)
        self.rook = None
        self._switch(CAUTIOUS_SEARCH)
        self._rebuild_path(z, self.frame_idx)

    def _scallop_escape(self, rv: RookView, obs: Observation, z: Point) -> Point:
        e = self.last_seen
        center = rv.base.center
        upper_variant = rv.vsign > 0
        if upper_variant:
            # Blocked by the center-side chain: either tilt the vertical to
            # the sight line, or search anew from the blocking point.
            sweep_dir = None
            if center is not None:
                sweep_dir = (z - center).normalized()
            else:
                sweep_dir = rv.base.vertical
            x_of_e = (e - z).cross(sweep_dir) * -1.0
            if x_of_e <= EPS and segment_within(
                Segment(z, e, degenerate=z == e), self.q
            ):
                vert = (e - z).normalized()
                tilted = frame_from_vertical(
                    rv.base.index, z, vert, kind=rv.base.kind, center=center
                )
                self.rook = RookView(tilted, 1, rv.span_index)
                self.last_seen = e
                return z
            self.rook = None
            self._switch(SEARCH)
            self._rebuild_path(z, self.frame_idx)
            return z
        # Lower variant: ride the sweep line through z down to the previous
        # search path, tracking both frames, then resume searching.
        if center is not None:
            vert = (z - center).normalized()
        else:
            vert = rv.base.vertical
        line_frame = frame_from_vertical(
            rv.base.index, z, vert, kind=rv.base.kind, center=center
        )
        target_s = self._path_cut_by_line(z, vert)
        if target_s is None:
            self.rook = None
            self._switch(SEARCH)
            self._rebuild_path(z, self.frame_idx)
            return z
        self.descent_recovery = _DescentRecovery(target_s, rv, line_frame)
        return z

    def _path_cut_by_line(self, anchor: Point, direction: Point):
        """Path parameter where the sweep line through anchor meets the
        current search path, if any."""
        path = self.path
        for i, arc in enumerate(path.arcs):
            d = arc.end - arc.start
            denom = direction.cross(d)
            if abs(denom) < 1e-12:
                continue
            w = arc.start - anchor
            u = -w.cross(direction) / denom
            if -1e-9 <= u <= 1 + 1e-9:
                cand = Point(
                    arc.start.x + d.x * u, arc.start.y + d.y * u
                )
                # Must be below the anchor along the line (toward the center).
                if (cand - anchor).dot(direction) <= EPS:
                    return path.cum[i] + arc.length() * min(max(u, 0.0), 1.0)
        return None

    def _descent_recovery_turn(self, obs: Observation) -> Point:
        rec = self.descent_recovery
        p = self.pos
        target = self.path.point_at(rec.target_s)
        if obs.evader_visible:
            e = obs.position
            self.last_seen = e
            if p.dist(e) <= 1.0 + EPS and self._clear_move(e):
                self.descent_recovery = None
                return e
            for f, span_idx in (
                (rec.line_frame, rec.old_rook.span_index),
                (rec.old_rook.base, rec.old_rook.span_index),
            ):
                dx = f.x(e) - f.x(p)
                if abs(dx) <= 0.5 + EPS and segment_within(
                    Segment(p, e, degenerate=p == e), self.q
                ):
                    vsign = 1 if f.y(e) >= f.y(p) else -1
                    self.descent_recovery = None
                    self._enter_rook_view(
                        RookView(f.with_origin(p), vsign, span_idx), e
                    )
                    return p
        d = target - p
        n = d.norm()
        if n <= 1.0 + EPS:
            self.descent_recovery = None
            self.s = rec.target_s
            self._switch(SEARCH)
            self.rook = None
            return target
        step = Point(p.x + d.x / n, p.y + d.y / n)
        if not self._clear_move(step):
            raise IllegalStateError("descent recovery step blocked")
        return step

    # -- hide response ------------------------------------------------------

    def _hide_response_turn(self, obs: Observation) -> Point:
        hr = self.hide
        rv = hr.rook
        p = self.pos
        if obs.evader_visible:
            e = obs.position
            self.last_seen = e
            y_p = rv.y(p)
            y_e = rv.y(e)
            if y_e <= y_p + EPS or y_e - y_p <= SQRT3_2 + EPS:
                self.hide = None
                move, gambit = self._rook_ladder(rv, obs)
                if gambit.kind == GAMBIT_NONE:
                    return move
                self.last_gambit = gambit
                return self._respond_to_gambit(rv, obs, gambit)
            if rv.x(e) >= rv.x(p) - EPS and rv.x(e) > rv.x(hr.vertex_point):
                # Re-emerged rightward: back to plain rook play.
                self.hide = None
                self.rook = rv
                move, gambit = self._rook_ladder(rv, obs)
                if gambit.kind == GAMBIT_NONE:
                    return move
                self.last_gambit = gambit
                return self._respond_to_gambit(rv, obs, gambit)
        # Drive to the hiding vertex: first match its x, then climb to it.
        vx = rv.x(hr.vertex_point)
        dx = vx - rv.x(p)
        if abs(dx) > EPS:
            h = max(-1.0, min(1.0, dx))
            climb = math.sqrt(max(1.0 - h * h, 0.0))
            # Climb only with leftover budget, never past the vertex height.
            dy_max = rv.y(hr.vertex_point) - rv.y(p)
            climb = max(0.0, min(climb, dy_max))
            target = rv.offset(p, h, climb)
            if not self._clear_move(target):
                target = rv.offset(p, h, 0.0)
                if not self._clear_move(target):
                    raise IllegalStateError("hide-response drive blocked")
            return target
        dy = rv.y(hr.vertex_point) - rv.y(p)
        if dy > EPS:
            climb = min(1.0, dy)
            target = rv.offset(p, 0.0, climb)
            if not self._clear_move(target):
                raise IllegalStateError("hide-response climb blocked")
            if climb < 1.0 - EPS:
                self._reach_hide_vertex()
            return target
        self._reach_hide_vertex()
        return self.pos

    def _reach_hide_vertex(self):
        hr = self.hide
        self.hide = None
        self.rook = None
        self._enter_cautious_from_hide(hr)

    def _enter_cautious_from_hide(self, hr: _HideResponse):
        rv = hr.rook
        e = self.last_seen if self.last_seen is not None else hr.last_seen
        side = -1 if rv.x(e) <= rv.x(hr.vertex_point) else 1
        self.cautious = _CautiousState(rv, e, side)
        self._switch(CAUTIOUS_SEARCH)
        self._rebuild_path(hr.vertex_point, self.frame_idx)
        self.pos = self.pos  # position unchanged; path starts here

    # -- cautious search ------------------------------------------------------

    def _cautious_turn(self, obs: Observation) -> Point:
        cs = self.cautious
        rv = cs.old_rook
        p = self.pos
        if obs.evader_visible:
            e = obs.position
            side_now = 1 if rv.x(e) > rv.x(p) + EPS else -1
            if side_now != cs.side:
                # Crossed back: revert to the old rook phase.
                self.cautious = None
                self._enter_rook_view(
                    RookView(rv.base.with_origin(p), rv.vsign, rv.span_index), e
                )
                move, gambit = self._rook_ladder(self.rook, obs)
                if gambit.kind == GAMBIT_NONE:
                    return move
                self.last_gambit = gambit
                return self._respond_to_gambit(self.rook, obs, gambit)
        move = self._search_turn(obs)
        if self.mode == ROOK:
            self.cautious = None
        return move
