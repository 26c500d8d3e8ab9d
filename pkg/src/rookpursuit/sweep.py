"""Sweep structure: verifies monotone / scallop / sweepable annotations,
splits the boundary into chains, and builds the ordered frame sequence.

A frame is a rigid right-handed local coordinate system: "horizontal" is
the sweep-forward direction ("rightward") and "vertical" is horizontal
rotated +90 degrees.  For an unflipped scallop piece, vertical points away
from the sweep center; pieces whose center sits on the opposite side of
the polygon are marked flipped, which swaps the chain roles (a scallop
piece's permanent checkpoints always live on its center-side chain).
Everything the search and pursuit layers call left/right/up/down is
defined through frames.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Optional, Union

from .geometry import (
    EPS,
    EXTERIOR,
    GeometryError,
    Point,
    Polygon,
    point_in_polygon,
)

MONOTONE = "monotone"
SPOKE = "spoke"


class AnnotationError(GeometryError):
    """A sweep annotation failed verification."""


class NotMonotoneError(AnnotationError):
    def __init__(self, message, witness=None):
        super().__init__(message)
        self.witness = witness


class NotScallopError(AnnotationError):
    def __init__(self, message, witness_angle=None):
        super().__init__(message)
        self.witness_angle = witness_angle


@dataclass(frozen=True)
class MonotoneAnnotation:
    axis: Point

    kind = "monotone"

    def __post_init__(self):
        object.__setattr__(self, "axis", Point(*self.axis).normalized())


@dataclass(frozen=True)
class ScallopAnnotation:
    center: Point

    kind = "scallop"

    def __post_init__(self):
        object.__setattr__(self, "center", Point(*self.center))


@dataclass(frozen=True)
class SweepableAnnotation:
    """Ordered pieces with explicit transition chords between them.

    ``cuts[i]`` is the shared sweep line between pieces i and i+1, given by
    its two boundary endpoints.  A cut entering a scallop piece must pass
    through that piece's first vertex (its frame family starts there).
    """

    pieces: tuple
    cuts: tuple

    kind = "sweepable"

    def __post_init__(self):
        object.__setattr__(self, "pieces", tuple(self.pieces))
        object.__setattr__(
            self, "cuts", tuple((Point(*a), Point(*b)) for a, b in self.cuts)
        )
        if len(self.cuts) != len(self.pieces) - 1:
            raise AnnotationError(
                f"sweepable annotation needs {len(self.pieces) - 1} cuts,"
                f" got {len(self.cuts)}"
            )
        for piece in self.pieces:
            if not isinstance(piece, (MonotoneAnnotation, ScallopAnnotation)):
                raise AnnotationError(f"invalid sweepable piece {piece!r}")


Annotation = Union[MonotoneAnnotation, ScallopAnnotation, SweepableAnnotation]


@dataclass(frozen=True)
class Chains:
    """Boundary split into the two sweep-monotone chains.

    Vertex index tuples run from the sweep-start vertex to the sweep-end
    vertex.  ``lower`` is the chain traversed counter-clockwise from the
    start, which is the frame-lower chain of the first frame; a flipped
    frame's roles swap (see FrameSpan.lower_is_ccw_chain).
    """

    lower: tuple
    upper: tuple
    leftmost: int
    rightmost: int


@dataclass(frozen=True)
class Frame:
    index: int
    origin: Point
    vertical: Point
    horizontal: Point
    kind: str = MONOTONE
    spoke_vertex: Optional[int] = None
    center: Optional[Point] = None

    def to_frame(self, p: Point):
        dx, dy = p[0] - self.origin[0], p[1] - self.origin[1]
        return (
            dx * self.horizontal[0] + dy * self.horizontal[1],
            dx * self.vertical[0] + dy * self.vertical[1],
        )

    def from_frame(self, x: float, y: float) -> Point:
        return Point(
            self.origin[0] + x * self.horizontal[0] + y * self.vertical[0],
            self.origin[1] + x * self.horizontal[1] + y * self.vertical[1],
        )

    def x(self, p: Point) -> float:
        return (p[0] - self.origin[0]) * self.horizontal[0] + (
            p[1] - self.origin[1]
        ) * self.horizontal[1]

    def y(self, p: Point) -> float:
        return (p[0] - self.origin[0]) * self.vertical[0] + (
            p[1] - self.origin[1]
        ) * self.vertical[1]

    def flipped_upside_down(self) -> "Frame":
        """Same frame with up and right reversed (for lower-side pursuit)."""
        return Frame(
            self.index,
            self.origin,
            Point(-self.vertical.x, -self.vertical.y),
            Point(-self.horizontal.x, -self.horizontal.y),
            self.kind,
            self.spoke_vertex,
            self.center,
        )

    def with_origin(self, origin: Point) -> "Frame":
        return Frame(
            self.index,
            origin,
            self.vertical,
            self.horizontal,
            self.kind,
            self.spoke_vertex,
            self.center,
        )


def frame_from_vertical(index: int, origin: Point, vertical: Point, **kw) -> Frame:
    v = Point(*vertical).normalized()
    return Frame(index, origin, v, Point(v.y, -v.x), **kw)


@dataclass(frozen=True)
class FrameSpan:
    """One frame plus its region bookkeeping inside a decomposition.

    ``entry_anchor``/``entry_dir`` give the sweep line where this frame's
    region starts (its own spoke for spoke frames, the piece's entry cut
    for monotone frames); the region ends at the next span's entry line.
    """

    frame: Frame
    piece: int
    entry_anchor: Optional[Point] = None
    entry_dir: Optional[Point] = None
    # Orientation flip relative to the previous frame (opposite-side center).
    flip_from_previous: bool = False
    # Whether the counter-clockwise chain is this frame's lower chain.
    lower_is_ccw_chain: bool = True
    # Scallop pieces keep their permanent checkpoints on the center-side
    # chain; True when that chain is the frame-upper one (flipped piece).
    checkpoint_on_frame_upper: bool = False


@dataclass(frozen=True)
class Decomposition:
    polygon: Polygon
    annotation: Annotation
    chains: Chains
    spans: tuple
    start_vertex: int
    end_vertex: int

    @property
    def frames(self):
        return tuple(s.frame for s in self.spans)

    def frame_count(self) -> int:
        return len(self.spans)

    def transition_line(self, k: int):
        """(anchor, direction) of the line between frames k and k+1."""
        if k + 1 >= len(self.spans):
            return None
        nxt = self.spans[k + 1]
        if nxt.entry_anchor is not None:
            return (nxt.entry_anchor, nxt.entry_dir)
        return (nxt.frame.origin, nxt.frame.vertical)

    def lower_chain_vertices(self, span: FrameSpan):
        return self.chains.lower if span.lower_is_ccw_chain else self.chains.upper

    def upper_chain_vertices(self, span: FrameSpan):
        return self.chains.upper if span.lower_is_ccw_chain else self.chains.lower


def _ccw_range(n: int, i: int, j: int):
    out = [i]
    k = i
    while k != j:
        k = (k + 1) % n
        out.append(k)
    return out


def verify_monotone(q: Polygon, axis) -> Chains:
    """Chains of q with respect to the monotone axis, or NotMonotoneError."""
    a = Point(*axis).normalized()
    verts = q.vertices
    n = q.n
    proj = [v.x * a.x + v.y * a.y for v in verts]
    lo = min(proj)
    hi = max(proj)
    mins = [i for i in range(n) if proj[i] == lo]
    maxs = [i for i in range(n) if proj[i] == hi]

    def pick_extreme(cands):
        if len(cands) == 1:
            return cands[0]
        cand_set = set(cands)
        for i in cands:
            if (i + 1) % n not in cand_set:
                return i
        raise NotMonotoneError(
            "degenerate extreme: every vertex is tied", witness=tuple(cands)
        )

    v1 = pick_extreme(mins)
    vn = pick_extreme(maxs)
    if v1 == vn:
        raise NotMonotoneError("degenerate polygon extremes", witness=(v1,))
    lower = _ccw_range(n, v1, vn)
    upper = _ccw_range(n, vn, v1)[::-1]
    for chain in (lower, upper):
        for k in range(len(chain) - 1):
            if proj[chain[k + 1]] < proj[chain[k]]:
                i0 = chain[max(0, k - 1)]
                raise NotMonotoneError(
                    f"projection reverses at vertex {chain[k + 1]}",
                    witness=(i0, chain[k], chain[k + 1]),
                )
    return Chains(tuple(lower), tuple(upper), v1, vn)


def _angles_about(center: Point, points) -> list:
    """Angles about center on a common branch spanning < pi, else error."""
    raw = [math.atan2(p.y - center.y, p.x - center.x) for p in points]
    if len(raw) == 1:
        return raw
    order = sorted(raw)
    m = len(order)
    gaps = [(order[(i + 1) % m] - order[i]) % (2 * math.pi) for i in range(m)]
    widest = max(range(m), key=lambda i: gaps[i])
    if 2 * math.pi - gaps[widest] >= math.pi - 1e-12:
        raise NotScallopError(
            "points span an angle >= pi about the center",
            witness_angle=order[widest],
        )
    lo = order[(widest + 1) % m]
    return [lo + ((t - lo) % (2 * math.pi)) for t in raw]


def verify_scallop(q: Polygon, center) -> Chains:
    """Chains of q in polar (decreasing angle) order, or NotScallopError."""
    c = Point(*center)
    if point_in_polygon(c, q) != EXTERIOR:
        raise NotScallopError("scallop center must lie strictly outside the polygon")
    verts = q.vertices
    n = q.n
    for v in verts:
        if v.dist(c) < EPS:
            raise NotScallopError("vertex coincides with the center")
    theta = _angles_about(c, verts)
    hi = max(theta)
    lo = min(theta)
    maxs = [i for i in range(n) if theta[i] == hi]
    mins = [i for i in range(n) if theta[i] == lo]
    if len(maxs) != 1 or len(mins) != 1:
        raise NotScallopError("angular extremes are not unique", witness_angle=hi)
    v1 = maxs[0]
    vn = mins[0]
    lower = _ccw_range(n, v1, vn)
    upper = _ccw_range(n, vn, v1)[::-1]
    for chain in (lower, upper):
        for k in range(len(chain) - 1):
            if theta[chain[k + 1]] > theta[chain[k]] + 1e-12:
                raise NotScallopError(
                    f"polar angle reverses at vertex {chain[k + 1]}",
                    witness_angle=theta[chain[k + 1]],
                )
    return Chains(tuple(lower), tuple(upper), v1, vn)


def build_frames(q: Polygon, ann: Annotation) -> Decomposition:
    """Verify ann and produce the ordered frame sequence F_1..F_l."""
    if isinstance(ann, MonotoneAnnotation):
        chains = verify_monotone(q, ann.axis)
        up = Point(-ann.axis.y, ann.axis.x)
        frame = Frame(0, q.vertices[chains.leftmost], up, ann.axis, MONOTONE)
        return Decomposition(
            q,
            ann,
            chains,
            (FrameSpan(frame, piece=0),),
            chains.leftmost,
            chains.rightmost,
        )
    if isinstance(ann, ScallopAnnotation):
        chains = verify_scallop(q, ann.center)
        theta = _angles_about(ann.center, q.vertices)
        order = sorted(range(q.n), key=lambda i: (-theta[i], i))
        spans = []
        for k, vi in enumerate(order):
            v = q.vertices[vi]
            up = (v - ann.center).normalized()
            frame = Frame(
                k, v, up, Point(up.y, -up.x), SPOKE, spoke_vertex=vi,
                center=ann.center,
            )
            spans.append(
                FrameSpan(frame, piece=0, entry_anchor=v, entry_dir=up)
            )
        return Decomposition(
            q, ann, chains, tuple(spans), chains.leftmost, chains.rightmost
        )
    if isinstance(ann, SweepableAnnotation):
        if len(ann.pieces) == 1:
            inner = build_frames(q, ann.pieces[0])
            return Decomposition(
                q, ann, inner.chains, inner.spans, inner.start_vertex,
                inner.end_vertex,
            )
        return _build_sweepable(q, ann)
    raise AnnotationError(f"unknown annotation {ann!r}")


# -- sweepable assembly -------------------------------------------------------


def _boundary_key(q: Polygon, p: Point) -> float:
    """Boundary position of p as edge_index + t; p must lie on the boundary."""
    best = (math.inf, 0.0)
    for i, (a, b) in enumerate(q.edges):
        vx, vy = b.x - a.x, b.y - a.y
        seg2 = vx * vx + vy * vy
        t = 0.0 if seg2 == 0 else max(
            0.0, min(1.0, ((p.x - a.x) * vx + (p.y - a.y) * vy) / seg2)
        )
        d = math.hypot(p.x - (a.x + t * vx), p.y - (a.y + t * vy))
        if d < best[0]:
            best = (d, i + t)
    if best[0] > 1e-6:
        raise AnnotationError(f"point {p} is not on the polygon boundary")
    return best[1] % q.n


def _key_in_ccw_interval(key, lo, hi, n, tol=1e-9) -> bool:
    """Whether key lies in the ccw (increasing, cyclic) interval [lo, hi]."""
    span = (hi - lo) % n
    off = (key - lo) % n
    return -tol <= off <= span + tol or off >= n - tol


def _on_line(p: Point, anchor: Point, direction: Point, tol=1e-6) -> bool:
    return abs((p - anchor).cross(direction)) <= tol * max(1.0, (p - anchor).norm())


def _build_sweepable(q: Polygon, ann: SweepableAnnotation) -> Decomposition:
    n = q.n
    cut_keys = [
        (_boundary_key(q, a), _boundary_key(q, b), a, b) for a, b in ann.cuts
    ]
    k0a, k0b, _p0a, _p0b = cut_keys[0]
    later = [k for (ka, kb, _a, _b) in cut_keys[1:] for k in (ka, kb)]
    if later:
        if _key_in_ccw_interval(later[0], k0a, k0b, n, tol=-1e-9):
            arcs = [(k0b, k0a)]
        else:
            arcs = [(k0a, k0b)]
    else:
        arcs = [(k0b, k0a), (k0a, k0b)]
    err = None
    for arc in arcs:
        try:
            return _assemble_sweepable(q, ann, cut_keys, arc)
        except AnnotationError as e:
            err = e
    raise err


def _assemble_sweepable(q, ann, cut_keys, arc0) -> Decomposition:
    n = q.n
    pieces = ann.pieces
    m = len(pieces)

    def arc_vertices(lo, hi):
        return [i for i in range(n) if _key_in_ccw_interval(float(i), lo, hi, n)]

    first = pieces[0]
    members0 = arc_vertices(*arc0)
    if not members0:
        raise AnnotationError("first sweepable piece contains no vertices")
    if isinstance(first, MonotoneAnnotation):
        proj = {i: q.vertices[i].dot(first.axis) for i in members0}
        start_vertex = min(members0, key=lambda i: (proj[i], i))
    else:
        theta = _angles_about(first.center, [q.vertices[i] for i in members0])
        by_theta = dict(zip(members0, theta))
        start_vertex = max(members0, key=lambda i: (by_theta[i], -i))

    klast_a, klast_b, _pa, _pb = cut_keys[-1]
    if _key_in_ccw_interval(float(start_vertex), klast_a, klast_b, n):
        arc_last = (klast_b, klast_a)
    else:
        arc_last = (klast_a, klast_b)
    last = pieces[-1]
    members_last = arc_vertices(*arc_last)
    if not members_last:
        raise AnnotationError("last sweepable piece contains no vertices")
    if isinstance(last, MonotoneAnnotation):
        projl = {i: q.vertices[i].dot(last.axis) for i in members_last}
        end_vertex = max(members_last, key=lambda i: (projl[i], -i))
    else:
        thetal = _angles_about(last.center, [q.vertices[i] for i in members_last])
        by_thetal = dict(zip(members_last, thetal))
        end_vertex = min(members_last, key=lambda i: (by_thetal[i], i))
    if end_vertex == start_vertex:
        raise AnnotationError("sweepable start and end coincide")

    chains = Chains(
        tuple(_ccw_range(n, start_vertex, end_vertex)),
        tuple(_ccw_range(n, end_vertex, start_vertex))[::-1],
        start_vertex,
        end_vertex,
    )

    # Classify cut endpoints onto chain A (ccw start->end) or chain B, and
    # check the cuts appear in sweep order along both chains.
    sk, ek = float(start_vertex), float(end_vertex)
    cut_info = []
    for ka, kb, pa, pb in cut_keys:
        strictly_a = _key_in_ccw_interval(ka, sk, ek, n) and not (
            _key_in_ccw_interval(ka, ek, sk, n)
        )
        strictly_b = _key_in_ccw_interval(kb, sk, ek, n) and not (
            _key_in_ccw_interval(kb, ek, sk, n)
        )
        a_on_A = _key_in_ccw_interval(ka, sk, ek, n)
        b_on_A = _key_in_ccw_interval(kb, sk, ek, n)
        if strictly_a or (a_on_A and not b_on_A):
            cut_info.append({"keyA": ka, "keyB": kb, "ptA": pa, "ptB": pb})
        elif strictly_b or (b_on_A and not a_on_A):
            cut_info.append({"keyA": kb, "keyB": ka, "ptA": pb, "ptB": pa})
        else:
            raise AnnotationError("cut endpoints must land on opposite chains")
    prev_a = sk
    for info in cut_info:
        if not _key_in_ccw_interval(info["keyA"], prev_a, ek, n):
            raise AnnotationError("cuts are out of sweep order on the lower chain")
        prev_a = info["keyA"]

    def piece_members(pi):
        a_lo = sk if pi == 0 else cut_info[pi - 1]["keyA"]
        a_hi = ek if pi == m - 1 else cut_info[pi]["keyA"]
        b_lo = ek if pi == m - 1 else cut_info[pi]["keyB"]
        b_hi = sk if pi == 0 else cut_info[pi - 1]["keyB"]
        members = []
        for i in range(n):
            k = float(i)
            in_a = _key_in_ccw_interval(k, a_lo, a_hi, n)
            in_b = _key_in_ccw_interval(k, b_lo, b_hi, n)
            if pi < m - 1:
                # Vertices sitting exactly on the exit cut belong to the
                # next piece (its frame family starts there).
                if abs((k - a_hi) % n) < 1e-9 or abs((a_hi - k) % n) < 1e-9:
                    in_a = False
                if abs((k - b_lo) % n) < 1e-9 or abs((b_lo - k) % n) < 1e-9:
                    in_b = False
            if in_a or in_b:
                members.append(i)
        return members

    spans_raw = []
    prev_vertical_at_cut = None
    prev_horizontal_at_cut = None
    piece_flipped = False
    for pi, piece in enumerate(pieces):
        entry = cut_info[pi - 1] if pi > 0 else None
        exit_ = cut_info[pi] if pi < m - 1 else None
        members = piece_members(pi)
        if not members:
            raise AnnotationError(f"piece {pi} contains no vertices")
        if isinstance(piece, MonotoneAnnotation):
            axis = piece.axis
            if entry is not None:
                cut_dir = (entry["ptB"] - entry["ptA"]).normalized()
                if abs(cut_dir.dot(axis)) > 1e-6:
                    raise AnnotationError(
                        f"piece {pi}: monotone axis must be perpendicular"
                        " to its entry cut"
                    )
                if prev_horizontal_at_cut is not None and (
                    prev_horizontal_at_cut.dot(axis) < 0
                ):
                    axis = Point(-axis.x, -axis.y)
            if exit_ is not None:
                cut_dir = (exit_["ptB"] - exit_["ptA"]).normalized()
                if abs(cut_dir.dot(axis)) > 1e-6:
                    raise AnnotationError(
                        f"piece {pi}: monotone axis must be perpendicular"
                        " to its exit cut"
                    )
            up = Point(-axis.y, axis.x)
            if piece_flipped:
                # Chain roles inherited from the previous flipped piece stay
                # flipped across a monotone piece (its vertical continues
                # the previous family's orientation).
                pass
            _verify_piece_monotone(q, axis, members, chains)
            origin = entry["ptA"] if entry else q.vertices[start_vertex]
            spans_raw.append(
                dict(
                    vertical=up, horizontal=axis, origin=origin, kind=MONOTONE,
                    vertex=None, center=None, piece=pi,
                    piece_flipped=piece_flipped,
                    entry_anchor=entry["ptA"] if entry else None,
                    entry_dir=up if entry else None,
                )
            )
            prev_vertical_at_cut = up
            prev_horizontal_at_cut = axis
        else:
            center = piece.center
            anchor = entry["ptA"] if entry else q.vertices[start_vertex]
            if entry is not None and not _on_line(center, entry["ptA"], (
                entry["ptB"] - entry["ptA"]
            ).normalized()):
                raise AnnotationError(
                    f"piece {pi}: entry cut must pass through the scallop center"
                )
            if exit_ is not None and not _on_line(center, exit_["ptA"], (
                exit_["ptB"] - exit_["ptA"]
            ).normalized()):
                raise AnnotationError(
                    f"piece {pi}: exit cut must pass through the scallop center"
                )
            r_hat = (anchor - center).normalized()
            flipped = (
                prev_vertical_at_cut is not None
                and prev_vertical_at_cut.dot(r_hat) < 0
            )
            piece_flipped = flipped
            _verify_piece_scallop(q, center, members, chains, flipped)
            theta = _angles_about(center, [q.vertices[i] for i in members])
            by_theta = dict(zip(members, theta))
            ssign = 1 if not flipped else -1
            order = sorted(members, key=lambda i: (-ssign * by_theta[i], i))
            if entry is not None:
                v_first = q.vertices[order[0]]
                if min(v_first.dist(entry["ptA"]), v_first.dist(entry["ptB"])) > 1e-6:
                    raise AnnotationError(
                        f"piece {pi}: entry cut must pass through the piece's"
                        " first vertex"
                    )
            for vi in order:
                v = q.vertices[vi]
                r = (v - center).normalized()
                up = r if not flipped else Point(-r.x, -r.y)
                spans_raw.append(
                    dict(
                        vertical=up, horizontal=Point(up.y, -up.x), origin=v,
                        kind=SPOKE, vertex=vi, center=center, piece=pi,
                        piece_flipped=flipped, entry_anchor=v, entry_dir=up,
                    )
                )
            if exit_ is not None:
                r_exit = (exit_["ptA"] - center).normalized()
                v_exit = r_exit if not flipped else Point(-r_exit.x, -r_exit.y)
                prev_vertical_at_cut = v_exit
                prev_horizontal_at_cut = Point(v_exit.y, -v_exit.x)

    if len(spans_raw) > n:
        raise AnnotationError("frame sequence longer than the vertex count")

    spans = []
    lower_is_ccw = True
    prev_flipped = False
    for k, raw in enumerate(spans_raw):
        frame = Frame(
            k, raw["origin"], raw["vertical"], raw["horizontal"], raw["kind"],
            spoke_vertex=raw["vertex"], center=raw["center"],
        )
        flip = raw["piece_flipped"] != prev_flipped
        prev_flipped = raw["piece_flipped"]
        if flip:
            lower_is_ccw = not lower_is_ccw
        spans.append(
            FrameSpan(
                frame,
                piece=raw["piece"],
                entry_anchor=raw["entry_anchor"],
                entry_dir=raw["entry_dir"],
                flip_from_previous=flip,
                lower_is_ccw_chain=lower_is_ccw,
                checkpoint_on_frame_upper=(
                    raw["kind"] == SPOKE and raw["piece_flipped"]
                ),
            )
        )
    return Decomposition(q, ann, chains, tuple(spans), start_vertex, end_vertex)


def _chain_runs(members, chains):
    """Split piece members into chain-A and chain-B runs in sweep order."""
    a_pos = {i: k for k, i in enumerate(chains.lower)}
    b_pos = {i: k for k, i in enumerate(chains.upper)}
    run_a = sorted((i for i in members if i in a_pos), key=lambda i: a_pos[i])
    run_b = sorted(
        (i for i in members if i in b_pos and i not in a_pos),
        key=lambda i: b_pos[i],
    )
    return run_a, run_b


def _verify_piece_monotone(q, axis, members, chains):
    for run in _chain_runs(members, chains):
        proj = [q.vertices[i].dot(axis) for i in run]
        for k in range(len(proj) - 1):
            if proj[k + 1] < proj[k] - 1e-9:
                raise NotMonotoneError(
                    "piece boundary run is not sweep-monotone",
                    witness=(run[max(0, k - 1)], run[k], run[k + 1]),
                )


def _verify_piece_scallop(q, center, members, chains, flipped):
    if point_in_polygon(center, q) != EXTERIOR:
        raise NotScallopError("scallop piece center must lie outside the polygon")
    pts = [q.vertices[i] for i in members]
    theta = dict(zip(members, _angles_about(center, pts)))
    forward = -1 if not flipped else 1  # sign of dtheta along the sweep
    for run in _chain_runs(members, chains):
        for k in range(len(run) - 1):
            d = theta[run[k + 1]] - theta[run[k]]
            if d * forward < -1e-9:
                raise NotScallopError(
                    "piece polar angle reverses along the chain",
                    witness_angle=theta[run[k + 1]],
                )


def active_frame_index(dec: Decomposition, p: Point) -> int:
    """Last frame whose entry line has p on its sweep-forward side."""
    k = 0
    for i in range(1, len(dec.spans)):
        span = dec.spans[i]
        anchor = span.entry_anchor or span.frame.origin
        direction = span.entry_dir or span.frame.vertical
        off = (p[0] - anchor[0]) * direction[1] - (p[1] - anchor[1]) * direction[0]
        if off >= -EPS:
            k = i
    return k


def detect_monotone_axis(q: Polygon):
    """Try axis-aligned directions and every edge direction; first verified
    axis wins, None when the polygon is not monotone in any of them."""
    candidates = [Point(1, 0), Point(0, 1)]
    for a, b in q.edges:
        d = b - a
        if d.norm() > EPS:
            candidates.append(d.normalized())
    seen = set()
    for cand in candidates:
        for sign in (1, -1):
            c = Point(cand.x * sign, cand.y * sign)
            key = (round(c.x, 12), round(c.y, 12))
            if key in seen:
                continue
            seen.add(key)
            try:
                verify_monotone(q, c)
                return c
            except NotMonotoneError:
                continue
    return None
