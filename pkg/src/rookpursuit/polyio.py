"""Bit-exact file formats: polygon documents and replayable trace files.

Polygon documents are JSON with `vertices` (counter-clockwise [x, y]
pairs), a `sweep` object mirroring the annotation, and an optional
`evader_start`.  Floats serialize via repr (shortest round-trip), so a
parse-serialize cycle is the identity.

Trace files are newline-delimited JSON: a header record carrying the
polygon document, rule config, seed, policy, outcome, and a content hash
over the body lines; then one record per move.
"""

from __future__ import annotations

import hashlib
import json
from dataclasses import dataclass
from typing import Optional

from .engine import RuleConfig, Trace, TraceRecord
from .geometry import Point, Polygon
from .sweep import (
    Annotation,
    MonotoneAnnotation,
    ScallopAnnotation,
    SweepableAnnotation,
)

TRACE_FORMAT = "rookpursuit-trace-v1"


class DocumentError(ValueError):
    pass


def annotation_to_obj(ann: Annotation):
    if isinstance(ann, MonotoneAnnotation):
        return {"kind": "monotone", "axis": [ann.axis.x, ann.axis.y]}
    if isinstance(ann, ScallopAnnotation):
        return {"kind": "scallop", "center": [ann.center.x, ann.center.y]}
    if isinstance(ann, SweepableAnnotation):
        return {
            "kind": "sweepable",
            "pieces": [annotation_to_obj(p) for p in ann.pieces],
            "cuts": [[[a.x, a.y], [b.x, b.y]] for a, b in ann.cuts],
        }
    raise DocumentError(f"unknown annotation {ann!r}")


def annotation_from_obj(obj) -> Annotation:
    try:
        kind = obj["kind"]
        if kind == "monotone":
            return MonotoneAnnotation(Point(*obj["axis"]))
        if kind == "scallop":
            return ScallopAnnotation(Point(*obj["center"]))
        if kind == "sweepable":
            pieces = tuple(annotation_from_obj(p) for p in obj["pieces"])
            cuts = tuple(
                (Point(*a), Point(*b)) for a, b in obj["cuts"]
            )
            return SweepableAnnotation(pieces, cuts)
    except (KeyError, TypeError) as e:
        raise DocumentError(f"malformed sweep annotation: {e}") from e
    raise DocumentError(f"unknown sweep kind {obj.get('kind')!r}")


def polygon_doc(q: Polygon, ann: Annotation, evader_start: Optional[Point] = None):
    doc = {
        "vertices": [[v.x, v.y] for v in q.vertices],
        "sweep": annotation_to_obj(ann),
    }
    if evader_start is not None:
        doc["evader_start"] = [evader_start.x, evader_start.y]
    return doc


def parse_polygon_doc(doc):
    try:
        vertices = doc["vertices"]
        sweep = doc["sweep"]
    except (KeyError, TypeError) as e:
        raise DocumentError(f"malformed polygon document: {e}") from e
    poly = Polygon(vertices)
    ann = annotation_from_obj(sweep)
    start = doc.get("evader_start")
    evader_start = Point(*start) if start is not None else None
    return poly, ann, evader_start


def dump_polygon(path, q, ann, evader_start=None):
    with open(path, "w", encoding="utf-8") as fh:
        json.dump(polygon_doc(q, ann, evader_start), fh, indent=2)
        fh.write("\n")


def load_polygon(path):
    with open(path, encoding="utf-8") as fh:
        return parse_polygon_doc(json.load(fh))


# -- traces -------------------------------------------------------------------


def _record_obj(r: TraceRecord):
    return {
        "turn": r.turn,
        "actor": r.actor,
        "from": [r.frm.x, r.frm.y],
        "to": [r.to.x, r.to.y],
        "mode": r.mode,
        "gambit": r.gambit,
        "visible": r.visible,
        "advance": r.frontier_advance,
    }


def _record_from_obj(obj) -> TraceRecord:
    return TraceRecord(
        obj["turn"],
        obj["actor"],
        Point(*obj["from"]),
        Point(*obj["to"]),
        obj["mode"],
        obj["gambit"],
        obj["visible"],
        obj.get("advance", 0.0),
    )


def trace_body_lines(trace: Trace):
    return [
        json.dumps(_record_obj(r), separators=(",", ":")) for r in trace.records
    ]


def trace_hash(trace: Trace) -> str:
    h = hashlib.sha256()
    for line in trace_body_lines(trace):
        h.update(line.encode())
        h.update(b"\n")
    return h.hexdigest()


def dump_trace(path, trace: Trace, q, ann, evader_start, cfg: RuleConfig,
               seed: int, policy: str):
    header = {
        "format": TRACE_FORMAT,
        "polygon": polygon_doc(q, ann, evader_start),
        "config": {
            "capture_radius": cfg.capture_radius,
            "max_turns": cfg.max_turns,
        },
        "seed": seed,
        "policy": policy,
        "outcome": trace.outcome,
        "turns": trace.turns,
        "mode_switches": trace.mode_switches,
        "capture_point": (
            [trace.capture_point.x, trace.capture_point.y]
            if trace.capture_point
            else None
        ),
        "hash": trace_hash(trace),
    }
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(json.dumps(header, separators=(",", ":")) + "\n")
        for line in trace_body_lines(trace):
            fh.write(line + "\n")


@dataclass
class LoadedTrace:
    header: dict
    trace: Trace
    polygon: Polygon
    annotation: Annotation
    evader_start: Optional[Point]
    config: RuleConfig


def load_trace(path) -> LoadedTrace:
    with open(path, encoding="utf-8") as fh:
        lines = [ln for ln in fh.read().splitlines() if ln.strip()]
    if not lines:
        raise DocumentError("empty trace file")
    header = json.loads(lines[0])
    if header.get("format") != TRACE_FORMAT:
        raise DocumentError(f"not a {TRACE_FORMAT} file")
    records = [_record_from_obj(json.loads(ln)) for ln in lines[1:]]
    trace = Trace(
        records=records,
        outcome=header["outcome"],
        turns=header["turns"],
        mode_switches=header.get("mode_switches", 0),
        capture_point=(
            Point(*header["capture_point"]) if header.get("capture_point") else None
        ),
    )
    if trace_hash(trace) != header["hash"]:
        raise DocumentError("trace content hash mismatch")
    poly, ann, evader_start = parse_polygon_doc(header["polygon"])
    cfg = RuleConfig(
        capture_radius=header["config"]["capture_radius"],
        max_turns=header["config"]["max_turns"],
    )
    return LoadedTrace(header, trace, poly, ann, evader_start, cfg)


def replay_check(loaded: LoadedTrace) -> bool:
    """Re-apply every recorded move through the referee's validator and
    confirm the terminal state matches the header bit-exactly."""
    from .engine import CAPTURED, capture_check, validate_move

    q = loaded.polygon
    pursuer = evader = None
    for r in loaded.trace.records:
        if validate_move(q, r.frm, r.to) is not None:
            return False
        if r.actor == "pursuer":
            pursuer = r.to
        else:
            evader = r.to
    if loaded.trace.outcome == CAPTURED:
        if pursuer is None or evader is None:
            return False
        if not capture_check(q, pursuer, evader, loaded.config):
            return False
        if loaded.trace.capture_point is not None and (
            pursuer != loaded.trace.capture_point
        ):
            return False
    return True
