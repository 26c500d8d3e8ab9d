"""Turn-based referee: movement validation, observations, capture
detection, and replayable traces.

Turn order: the evader moves first each round, then the pursuer responds;
capture is checked after the pursuer's move.  The pursuer starts at the
sweep-start vertex, the evader wherever the caller placed him.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Callable, NamedTuple, Optional

from .geometry import (
    EPS,
    EXTERIOR,
    Point,
    Polygon,
    Segment,
    point_in_polygon,
    segment_within,
)
from .strategy import Observation, PursuerStrategy
from .sweep import Annotation, Decomposition, build_frames

EVADER_TO_MOVE = "evader-to-move"
PURSUER_TO_MOVE = "pursuer-to-move"
CAPTURED = "captured"
BOUND_EXCEEDED = "bound-exceeded"

TOO_FAR = "too-far"
EXITS_POLYGON = "exits-polygon"


class EngineError(Exception):
    pass


@dataclass(frozen=True)
class RuleConfig:
    capture_radius: float = 1.0
    max_turns: int = 0  # 0: derive the default safety bound
    speed: float = 1.0

    def __post_init__(self):
        if not (0 < self.capture_radius <= 1):
            raise EngineError("capture radius must be in (0, 1]")
        if self.max_turns < 0:
            raise EngineError("max_turns must be positive")
        if self.speed != 1.0:
            raise EngineError("both players move at unit speed")


def default_max_turns(dec: Decomposition) -> int:
    q = dec.polygon
    if dec.annotation.kind == "sweepable" and len(dec.annotation.pieces) > 1:
        return max(64, int(64 * q.n * max(q.area, 1.0)))
    return max(64, int(64 * (q.n + q.area)))


@dataclass(frozen=True)
class MoveViolation:
    kind: str
    obstruction: Optional[Point] = None

    def __str__(self):
        extra = f" at {self.obstruction}" if self.obstruction else ""
        return f"{self.kind}{extra}"


def validate_move(q: Polygon, frm: Point, to: Point) -> Optional[MoveViolation]:
    """None when legal; a violation with the first obstruction otherwise."""
    if frm.dist(to) > 1.0 + EPS:
        return MoveViolation(TOO_FAR)
    if frm == to:
        return None
    if segment_within(Segment(frm, to), q, tol=EPS):
        return None
    return MoveViolation(EXITS_POLYGON, obstruction=_first_exit(q, frm, to))


def _first_exit(q: Polygon, frm: Point, to: Point) -> Optional[Point]:
    from .geometry import first_boundary_hit

    d = to - frm
    n = d.norm()
    if n < EPS:
        return None
    try:
        hit = first_boundary_hit(frm, Point(d.x / n, d.y / n), q)
    except Exception:
        return frm
    return hit.point if hit.ray_t <= n + EPS else None


def observe(q: Polygon, pursuer: Point, evader: Point) -> Observation:
    visible = segment_within(Segment(pursuer, evader, degenerate=pursuer == evader), q)
    return Observation(visible, evader if visible else None)


def capture_check(q: Polygon, pursuer: Point, evader: Point,
                  cfg: RuleConfig) -> bool:
    if pursuer.dist(evader) > cfg.capture_radius + EPS:
        return False
    return segment_within(Segment(pursuer, evader, degenerate=pursuer == evader), q)


@dataclass(frozen=True)
class TraceRecord:
    turn: int
    actor: str  # "evader" | "pursuer"
    frm: Point
    to: Point
    mode: str
    gambit: str
    visible: bool
    frontier_advance: float = 0.0


@dataclass
class Trace:
    records: list = field(default_factory=list)
    outcome: str = BOUND_EXCEEDED
    turns: int = 0
    mode_switches: int = 0
    capture_point: Optional[Point] = None


class Game:
    """One running game; drives the pursuer strategy turn by turn."""

    def __init__(self, dec: Decomposition, evader_start: Point,
                 cfg: RuleConfig = RuleConfig()):
        q = dec.polygon
        if q.min_feature_size < 1.0 - EPS:
            raise EngineError(
                f"minimum feature size {q.min_feature_size:.3f} < 1"
            )
        if point_in_polygon(Point(*evader_start), q) == EXTERIOR:
            raise EngineError(f"evader start {evader_start} outside the polygon")
        self.dec = dec
        self.q = q
        self.cfg = cfg
        self.max_turns = cfg.max_turns or default_max_turns(dec)
        self.pursuer = q.vertices[dec.start_vertex]
        self.evader = Point(*evader_start)
        self.strategy = PursuerStrategy(dec, cfg.capture_radius)
        self.turn = 0
        self.phase = EVADER_TO_MOVE
        self.trace = Trace()

    # -- one full round ---------------------------------------------------

    def submit_evader(self, to: Point) -> Optional[MoveViolation]:
        if self.phase != EVADER_TO_MOVE:
            raise EngineError(f"not the evader's turn (phase {self.phase})")
        violation = validate_move(self.q, self.evader, to)
        if violation is not None:
            return violation
        self.trace.records.append(
            TraceRecord(
                self.turn, "evader", self.evader, to,
                self.strategy.mode, "none",
                observe(self.q, self.pursuer, to).evader_visible,
            )
        )
        self.evader = to
        self.phase = PURSUER_TO_MOVE
        return None

    def pursuer_reply(self) -> TraceRecord:
        if self.phase != PURSUER_TO_MOVE:
            raise EngineError(f"not the pursuer's turn (phase {self.phase})")
        obs = observe(self.q, self.pursuer, self.evader)
        frm = self.pursuer
        move = self.strategy.step(obs)
        violation = validate_move(self.q, frm, move)
        if violation is not None:
            raise EngineError(
                f"pursuer emitted an illegal move {frm} -> {move}: {violation}"
            )
        self.pursuer = move
        rec = TraceRecord(
            self.turn, "pursuer", frm, move, self.strategy.mode,
            self.strategy.last_gambit.kind, obs.evader_visible,
            self.strategy.last_frontier_advance,
        )
        self.trace.records.append(rec)
        self.turn += 1
        if capture_check(self.q, self.pursuer, self.evader, self.cfg):
            self.phase = CAPTURED
            self.trace.outcome = CAPTURED
            self.trace.capture_point = self.pursuer
        elif self.turn >= self.max_turns:
            self.phase = BOUND_EXCEEDED
            self.trace.outcome = BOUND_EXCEEDED
        else:
            self.phase = EVADER_TO_MOVE
        self.trace.turns = self.turn
        self.trace.mode_switches = self.strategy.mode_switches
        return rec

    @property
    def finished(self) -> bool:
        return self.phase in (CAPTURED, BOUND_EXCEEDED)


class EvaderView(NamedTuple):
    q: Polygon
    dec: Decomposition
    pursuer: Point
    evader: Point
    turn: int
    pursuer_mode: str


def run_game(
    q: Polygon,
    annotation: Annotation,
    evader_policy,
    cfg: RuleConfig,
    evader_start: Point,
    dec: Optional[Decomposition] = None,
) -> Trace:
    """Play a full game; deterministic given the policy's seed."""
    if dec is None:
        dec = build_frames(q, annotation)
    game = Game(dec, evader_start, cfg)
    while not game.finished:
        view = EvaderView(
            game.q, game.dec, game.pursuer, game.evader, game.turn,
            game.strategy.mode,
        )
        to = evader_policy.move(view)
        violation = game.submit_evader(to)
        if violation is not None:
            raise EngineError(
                f"evader policy emitted an illegal move {game.evader} -> {to}:"
                f" {violation}"
            )
        game.pursuer_reply()
    return game.trace
