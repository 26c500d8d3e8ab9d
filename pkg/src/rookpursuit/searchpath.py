"""Search paths: the canonical boundary-hugging traversal the pursuer
follows while hunting, plus checkpoint marks and the guarded frontier.

The construction walks the frame sequence: within a frame it alternates
horizontal runs with chain climbs (lower chain: up to a local max vertex,
upper chain: down to a local min vertex); at a transition line it descends
until the new frame's leftward horizontal protects the current checkpoint.
All of this is geometry; the turn-by-turn movement rules live in the
strategy layer, which walks the finished path.
"""

from __future__ import annotations

import math
from bisect import bisect_right, insort
from dataclasses import dataclass, field
from typing import Optional

from .geometry import (
    EPS,
    Point,
    Polygon,
    RayExitsImmediatelyError,
    Segment,
    first_boundary_hit,
    point_in_polygon,
    segment_within,
)
from .sweep import Decomposition, Frame, FrameSpan

HORIZONTAL = "horizontal"
CHAIN = "chain"
DESCENT = "descent"

CHECKPOINT = "checkpoint"
AUXILIARY = "auxiliary"


class SearchPathError(Exception):
    pass


@dataclass(frozen=True)
class Checkpoint:
    location: Point
    kind: str
    frame_index: int
    vertex: Optional[int] = None
    chain: str = "lower"  # chain role in the frame that created the mark


@dataclass(frozen=True)
class PathArc:
    start: Point
    end: Point
    kind: str
    frame_index: int
    prev_frame_index: Optional[int] = None  # descents track two frames
    edge_index: Optional[int] = None  # chain arcs remember their edge

    def length(self) -> float:
        return self.start.dist(self.end)


@dataclass(frozen=True)
class GuardedFrontier:
    frontier: Segment  # guarded part X': chord left end up to the checkpoint
    chord: Segment  # full search frontier X through the pursuer
    checkpoint: Checkpoint
    pursuer_territory_boundary: tuple
    evader_territory_area: float


class ChainIndex:
    """Edge and vertex lookups for the two sweep chains."""

    def __init__(self, dec: Decomposition):
        self.dec = dec
        q = dec.polygon
        n = q.n
        chains = dec.chains
        self.ccw_pos = {v: k for k, v in enumerate(chains.lower)}
        self.other_pos = {v: k for k, v in enumerate(chains.upper)}
        # Edge i connects vertex i and i+1 (ccw).  Edges strictly inside the
        # ccw run from start to end belong to the ccw ("A") chain.
        self.edge_chain = {}
        start, end = chains.leftmost, chains.rightmost
        k = start
        while k != end:
            self.edge_chain[k] = "A"
            k = (k + 1) % n
        while k != start:
            self.edge_chain[k] = "B"
            k = (k + 1) % n

    def chain_of_edge(self, edge_index: int) -> str:
        return self.edge_chain[edge_index]

    def sweep_run(self, which: str):
        """Vertex indices of the chain in sweep order (start -> end)."""
        if which == "A":
            return self.dec.chains.lower
        return self.dec.chains.upper

    def forward_position(self, which: str, edge_index: int) -> int:
        """Sweep position of the forward endpoint of a chain edge."""
        q = self.dec.polygon
        a, b = edge_index, (edge_index + 1) % q.n
        run = self.sweep_run(which)
        pos = self.ccw_pos if which == "A" else self.other_pos
        pa, pb = pos[a], pos[b]
        return max(pa, pb)

    def frame_lower_chain(self, span: FrameSpan) -> str:
        return "A" if span.lower_is_ccw_chain else "B"


@dataclass
class SearchPath:
    dec: Decomposition
    arcs: list
    marks: list  # (path_param, Checkpoint)
    stop_params: list  # sorted path params where the searcher must halt
    cum: list  # cumulative arc-length at each arc start; cum[-1] = total

    @property
    def polyline(self):
        pts = [self.arcs[0].start]
        pts.extend(a.end for a in self.arcs)
        return pts

    def total_length(self) -> float:
        return self.cum[-1]

    def arc_at(self, s: float):
        i = bisect_right(self.cum, s) - 1
        i = min(max(i, 0), len(self.arcs) - 1)
        return i

    def point_at(self, s: float) -> Point:
        s = min(max(s, 0.0), self.cum[-1])
        i = self.arc_at(s)
        arc = self.arcs[i]
        length = arc.length()
        t = 0.0 if length == 0 else (s - self.cum[i]) / length
        t = min(max(t, 0.0), 1.0)
        return Point(
            arc.start.x + (arc.end.x - arc.start.x) * t,
            arc.start.y + (arc.end.y - arc.start.y) * t,
        )

    def frame_index_at(self, s: float) -> int:
        return self.arcs[self.arc_at(s)].frame_index

    def next_stop(self, s: float) -> float:
        i = bisect_right(self.stop_params, s + 1e-9)
        if i >= len(self.stop_params):
            return self.cum[-1]
        return self.stop_params[i]

    def marks_before(self, s: float):
        return [m for (ms, m) in self.marks if ms <= s + 1e-9]


def _unique_sorted(values, tol=1e-9):
    out = []
    for v in sorted(values):
        if not out or v - out[-1] > tol:
            out.append(v)
    return out


class _Builder:
    def __init__(self, dec: Decomposition, chain_index: ChainIndex):
        self.dec = dec
        self.q = dec.polygon
        self.ci = chain_index
        self.arcs = []
        self.marks = []
        self.checkpoint: Optional[Checkpoint] = None

    # -- arc helpers ----------------------------------------------------------

    def _push(self, arc: PathArc):
        if arc.length() > 1e-12:
            self.arcs.append(arc)

    def _mark(self, cp: Checkpoint):
        self.marks.append((len(self.arcs), cp))
        if cp.kind == CHECKPOINT:
            self.checkpoint = cp

    # -- geometry helpers -------------------------------------------------

    def _ray_to_line(self, origin: Point, direction: Point, anchor: Point,
                     line_dir: Point):
        denom = direction.cross(line_dir)
        if abs(denom) < 1e-12:
            return None
        t = (anchor - origin).cross(line_dir) / denom
        return t if t > EPS else None

    def _transition_hit(self, k: int, origin: Point, direction: Point):
        line = self.dec.transition_line(k)
        if line is None:
            return None
        anchor, ldir = line
        t = self._ray_to_line(origin, direction, anchor, ldir)
        return t

    # -- main loop ----------------------------------------------------------

    def build(self, start: Point, start_frame: int,
              initial_checkpoint: Optional[Checkpoint]) -> None:
        dec = self.dec
        q = self.q
        end_point = q.vertices[dec.end_vertex]
        if initial_checkpoint is not None:
            self.checkpoint = initial_checkpoint
            self.marks.append((0, initial_checkpoint))
        p = start
        k = start_frame
        guard = 0
        max_iter = 16 * (q.n + dec.frame_count()) + 64
        while p.dist(end_point) > EPS:
            guard += 1
            if guard > max_iter:
                raise SearchPathError(
                    f"search path failed to terminate (at {p}, frame {k})"
                )
            span = dec.spans[k]
            frame = span.frame
            h = frame.horizontal
            t_boundary = None
            hit = None
            try:
                hit = first_boundary_hit(p, h, q)
                t_boundary = hit.ray_t
            except RayExitsImmediatelyError:
                t_boundary = None
            if t_boundary is None:
                # On the boundary heading outward: walk the chain from here.
                edge = self._edge_of_point(p)
                p, k = self._chain_walk(k, p, edge)
                continue
            t_line = self._transition_hit(k, p, h)
            if t_line is not None and t_line < t_boundary - EPS:
                z1 = Point(p.x + h.x * t_line, p.y + h.y * t_line)
                self._push(PathArc(p, z1, HORIZONTAL, k))
                p, k = self._descend(k, z1)
                continue
            bp = hit.point
            self._push(PathArc(p, bp, HORIZONTAL, k))
            p, k = self._chain_walk(k, bp, hit.edge_index)

    def _edge_of_point(self, p: Point) -> int:
        q = self.q
        best = (math.inf, 0)
        for i, (a, b) in enumerate(q.edges):
            vx, vy = b.x - a.x, b.y - a.y
            seg2 = vx * vx + vy * vy
            t = 0.0 if seg2 == 0 else max(
                0.0, min(1.0, ((p.x - a.x) * vx + (p.y - a.y) * vy) / seg2)
            )
            d = math.hypot(p.x - (a.x + t * vx), p.y - (a.y + t * vy))
            if d < best[0]:
                best = (d, i)
        if best[0] > 1e-6:
            raise SearchPathError(f"point {p} is not on the boundary")
        return best[1]

    def _frame_of_vertex(self, vertex: int, current: int) -> int:
        """Frame whose spoke passes through the vertex, else the current one."""
        for k in range(len(self.dec.spans)):
            if self.dec.spans[k].frame.spoke_vertex == vertex:
                return k
        return current

    def _chain_walk(self, k: int, p: Point, edge_index: int):
        """Walk along the boundary from p to the next feature vertex.

        Lower chain: climb to the local max vertex and plant a checkpoint.
        Upper chain: descend to the local min vertex, plant an auxiliary
        mark, and (in spoke frames) drop down the vertex's own spoke until
        the leftward horizontal protects the current checkpoint.
        """
        dec = self.dec
        q = self.q
        span = dec.spans[k]
        which = self.ci.chain_of_edge(edge_index)
        lower_chain = self.ci.frame_lower_chain(span)
        run = self.ci.sweep_run(which)
        pos = self.ci.forward_position(which, edge_index)
        is_lower = which == lower_chain

        def local_frame(vertex_index):
            # Chains rotate through the spoke frames; judge each step in
            # the frame of the vertex being stepped from.
            kk = self._frame_of_vertex(vertex_index, k)
            return dec.spans[max(kk, k)].frame

        # Degenerate: p already at the forward vertex.
        cur = pos
        target = q.vertices[run[cur]]
        if p.dist(target) > EPS:
            self._push(PathArc(p, target, CHAIN, k, edge_index=edge_index))
        p = target
        while cur + 1 < len(run):
            here = run[cur]
            nxt = run[cur + 1]
            f = local_frame(here)
            dy = f.y(q.vertices[nxt]) - f.y(q.vertices[here])
            if is_lower:
                if dy <= 1e-12:
                    break
            else:
                if dy >= -1e-12:
                    break
            nxt_point = q.vertices[nxt]
            self._push(PathArc(p, nxt_point, CHAIN, k))
            p = nxt_point
            cur += 1
        vertex = run[cur]
        new_k = max(self._frame_of_vertex(vertex, k), k)
        if is_lower:
            self._mark(
                Checkpoint(p, CHECKPOINT, new_k, vertex=vertex, chain="lower")
            )
            return p, new_k
        self._mark(Checkpoint(p, AUXILIARY, new_k, vertex=vertex, chain="upper"))
        if vertex == dec.end_vertex:
            return p, new_k
        if dec.spans[new_k].frame.kind == "spoke":
            p, new_k = self._descend(new_k, p, from_vertex=True, old_frame=k)
        return p, new_k

    def _descend(self, k_new_hint: int, z1: Point, from_vertex: bool = False,
                 old_frame: Optional[int] = None):
        """From z1 on the entry line of the next frame, move down that line
        until the leftward horizontal (new frame) protects the checkpoint."""
        dec = self.dec
        q = self.q
        if from_vertex:
            k_new = k_new_hint
        else:
            k_new = min(k_new_hint + 1, len(dec.spans) - 1)
        span = dec.spans[k_new]
        frame = span.frame
        x1, y1 = frame.to_frame(z1)
        # Clamp the descent to the boundary below z1 along the line.
        down = Point(-frame.vertical.x, -frame.vertical.y)
        try:
            floor_hit = first_boundary_hit(z1, down, q)
            y_floor = y1 - floor_hit.ray_t
        except RayExitsImmediatelyError:
            y_floor = y1
        target = self._protection_target(k_new)
        if target is None:
            y2 = y_floor
        else:
            y2 = min(max(frame.y(target.location), y_floor), y1)
            # Iterate: raise the protection point over obstructing features.
            for _ in range(q.n + 1):
                z2 = frame.from_frame(x1, y2)
                probe = target.location
                if segment_within(Segment(z2, probe, degenerate=z2 == probe), q):
                    break
                apex = self._obstructing_apex(k_new, z2, target)
                if apex is None:
                    y2 = min(y1, y2 + 0.5 * (y1 - y2) + 1e-6)
                    break
                target = apex
                y2 = min(max(frame.y(target.location), y_floor), y1)
            if target is not self.checkpoint and target.kind == CHECKPOINT:
                self._mark(target)
        z2 = frame.from_frame(x1, y2)
        prev_k = old_frame if old_frame is not None else max(k_new - 1, 0)
        self._push(
            PathArc(z1, z2, DESCENT, k_new, prev_frame_index=prev_k)
        )
        return z2, k_new

    def _protection_target(self, k: int) -> Optional[Checkpoint]:
        if self.checkpoint is not None:
            return self.checkpoint
        # No checkpoint yet: protect the sweep-start vertex.
        v = self.dec.start_vertex
        return Checkpoint(
            self.q.vertices[v], CHECKPOINT, 0, vertex=v, chain="lower"
        )

    def _obstructing_apex(self, k: int, z2: Point, target: Checkpoint):
        """Rightmost lower-chain vertex poking above the protection ray."""
        dec = self.dec
        q = self.q
        span = dec.spans[k]
        frame = span.frame
        lower = self.ci.sweep_run(self.ci.frame_lower_chain(span))
        x_lo = frame.x(target.location)
        y_ray = frame.y(z2)
        best = None
        for vi in lower:
            v = q.vertices[vi]
            x, y = frame.to_frame(v)
            if x_lo + EPS < x < -EPS and y > y_ray + EPS:
                if best is None or x > best[1]:
                    best = (vi, x, y)
        if best is None:
            return None
        vi, x, y = best
        return Checkpoint(q.vertices[vi], CHECKPOINT, k, vertex=vi, chain="lower")


def build_search_path(
    dec: Decomposition,
    start: Point,
    start_frame: int = 0,
    initial_checkpoint: Optional[Checkpoint] = None,
) -> SearchPath:
    """Construct the search path from start to the sweep-end vertex."""
    ci = ChainIndex(dec)
    b = _Builder(dec, ci)
    b.build(Point(*start), start_frame, initial_checkpoint)
    arcs = b.arcs
    if not arcs:
        # Degenerate: already at the end vertex.
        end = dec.polygon.vertices[dec.end_vertex]
        arcs = [PathArc(end, end, HORIZONTAL, start_frame)]
    cum = [0.0]
    for arc in arcs:
        cum.append(cum[-1] + arc.length())
    marks = [(cum[min(i, len(arcs))], cp) for (i, cp) in b.marks]
    stop_params = _stop_params(dec, arcs, cum)
    return SearchPath(dec, arcs, marks, stop_params, cum)


def _stop_params(dec: Decomposition, arcs, cum) -> list:
    """Halting positions: every arc endpoint plus every crossing of a vertex
    abscissa (frame-x of a polygon vertex) inside the active frame."""
    q = dec.polygon
    stops = set()
    for i, arc in enumerate(arcs):
        stops.add(cum[i])
        stops.add(cum[i + 1])
        frame = dec.spans[arc.frame_index].frame
        x0 = frame.x(arc.start)
        x1 = frame.x(arc.end)
        if x1 - x0 > EPS:
            length = arc.length()
            for v in q.vertices:
                xv = frame.x(v)
                if x0 + EPS < xv < x1 - EPS:
                    t = (xv - x0) / (x1 - x0)
                    stops.add(cum[i] + t * length)
    return _unique_sorted(stops)


# -- spec-surface wrappers ----------------------------------------------------


def build_monotone_path(q: Polygon, dec: Decomposition, start: Point) -> SearchPath:
    return build_search_path(dec, start, 0, None)


def build_scallop_path(q: Polygon, dec: Decomposition) -> SearchPath:
    start = q.vertices[dec.start_vertex]
    return build_search_path(dec, start, 0, None)


def build_sweepable_path(q: Polygon, dec: Decomposition) -> SearchPath:
    start = q.vertices[dec.start_vertex]
    return build_search_path(dec, start, 0, None)


def guarded_frontier(
    path_or_dec, pursuer: Point, frame_index: int = 0
) -> GuardedFrontier:
    """Frontier chord through the pursuer with its checkpoint and the
    induced territory partition.

    The checkpoint is the first boundary touch leftward of the pursuer on
    her horizontal; the guarded frontier runs from the chord's left end up
    to that checkpoint (degenerate when they coincide).
    """
    dec = path_or_dec.dec if isinstance(path_or_dec, SearchPath) else path_or_dec
    q = dec.polygon
    frame = dec.spans[frame_index].frame
    start_point = q.vertices[dec.start_vertex]
    if pursuer.dist(start_point) <= EPS:
        cp = Checkpoint(start_point, CHECKPOINT, frame_index,
                        vertex=dec.start_vertex, chain="lower")
        degenerate = Segment(start_point, start_point, degenerate=True)
        return GuardedFrontier(degenerate, degenerate, cp, (start_point,), q.area)
    h = frame.horizontal
    leftward = Point(-h.x, -h.y)
    c_hit = first_boundary_hit(pursuer, leftward, q)
    right_hit = first_boundary_hit(pursuer, h, q)
    cp = Checkpoint(c_hit.point, CHECKPOINT, frame_index, chain="lower")
    # Continue past a grazing touch to the true chord end; a real wall makes
    # the continuation ray exit immediately.
    try:
        left_end = first_boundary_hit(c_hit.point, leftward, q)
    except RayExitsImmediatelyError:
        left_end = c_hit
    frontier = Segment(
        left_end.point, c_hit.point, degenerate=left_end.point == c_hit.point
    )
    chord = Segment(left_end.point, right_hit.point)
    boundary, area_e = _territory(q, dec, left_end, c_hit)
    return GuardedFrontier(frontier, chord, cp, boundary, area_e)


def _boundary_key_of_hit(hit) -> float:
    return hit.edge_index + min(max(hit.edge_u, 0.0), 1.0)


def _territory(q: Polygon, dec, left_end, c_hit):
    """Pursuer-side boundary polyline and the evader-territory area.

    The guarded chord [left_end, c] splits the boundary in two arcs; the
    pursuer side is the arc containing the sweep-start vertex.
    """
    n = q.n
    k_left = _boundary_key_of_hit(left_end)
    k_c = _boundary_key_of_hit(c_hit)
    k_start = float(dec.start_vertex)

    def arc_points(k_from, k_to):
        pts = []
        # vertices strictly after k_from up to k_to going ccw
        i = int(math.floor(k_from))
        steps = 0
        key = k_from
        while steps <= n + 1:
            steps += 1
            nxt_vertex = (int(math.floor(key)) + 1) % n
            nxt_key = float(nxt_vertex) if nxt_vertex != 0 else 0.0
            # advance to next vertex; stop when passing k_to
            d_to = (k_to - key) % n
            d_v = (nxt_vertex - key) % n
            if d_v == 0:
                d_v = n
            if d_to <= d_v + 1e-12:
                break
            pts.append(q.vertices[nxt_vertex])
            key = float(nxt_vertex)
        return pts

    def contains(k_from, k_to, k):
        span = (k_to - k_from) % n
        off = (k - k_from) % n
        return off <= span + 1e-9

    if contains(k_left, k_c, k_start):
        pts = [left_end.point] + arc_points(k_left, k_c) + [c_hit.point]
    else:
        pts = [c_hit.point] + arc_points(k_c, k_left) + [left_end.point]
    area_p = abs(_shoelace(pts)) if len(pts) >= 3 else 0.0
    return tuple(pts), max(q.area - area_p, 0.0)


def _shoelace(pts) -> float:
    s = 0.0
    for i in range(len(pts)):
        a = pts[i]
        b = pts[(i + 1) % len(pts)]
        s += a.x * b.y - a.y * b.x
    return s / 2.0
