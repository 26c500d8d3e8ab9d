"""SVG rendering of boards and traces.

Conventions: boundary in black, search path dashed blue, pursuer polyline
colored by mode (search phases dark, rook phases light), evader polyline
in red, start/capture markers.
"""

from __future__ import annotations

from .engine import Trace
from .geometry import Polygon
from .searchpath import SearchPath

SEARCH_COLOR = "#1a1a1a"
ROOK_COLOR = "#999999"
CAUTIOUS_COLOR = "#5577aa"
EVADER_COLOR = "#cc3333"
PATH_COLOR = "#3366cc"
BOUNDARY_COLOR = "#000000"

_MODE_COLORS = {
    "search": SEARCH_COLOR,
    "rook": ROOK_COLOR,
    "cautious-search": CAUTIOUS_COLOR,
}


def _fmt(v: float) -> str:
    return f"{v:.4f}"


class SvgCanvas:
    def __init__(self, bbox, margin=1.5, scale=40.0):
        xmin, ymin, xmax, ymax = bbox
        self.xmin = xmin - margin
        self.ymax = ymax + margin
        self.scale = scale
        self.width = (xmax - xmin + 2 * margin) * scale
        self.height = (ymax - ymin + 2 * margin) * scale
        self.parts = []

    def tx(self, p):
        return (p[0] - self.xmin) * self.scale, (self.ymax - p[1]) * self.scale

    def polyline(self, pts, color, width=1.5, dashed=False, opacity=1.0):
        if len(pts) < 2:
            return
        coords = " ".join(
            f"{_fmt(x)},{_fmt(y)}" for x, y in (self.tx(p) for p in pts)
        )
        dash = ' stroke-dasharray="6,5"' if dashed else ""
        self.parts.append(
            f'<polyline points="{coords}" fill="none" stroke="{color}"'
            f' stroke-width="{width}" stroke-opacity="{opacity}"'
            f' stroke-linejoin="round" stroke-linecap="round"{dash}/>'
        )

    def polygon(self, pts, stroke, fill="none", width=2.0):
        coords = " ".join(
            f"{_fmt(x)},{_fmt(y)}" for x, y in (self.tx(p) for p in pts)
        )
        self.parts.append(
            f'<polygon points="{coords}" fill="{fill}" stroke="{stroke}"'
            f' stroke-width="{width}" stroke-linejoin="round"/>'
        )

    def circle(self, p, r, fill, stroke="none"):
        x, y = self.tx(p)
        self.parts.append(
            f'<circle cx="{_fmt(x)}" cy="{_fmt(y)}" r="{r}" fill="{fill}"'
            f' stroke="{stroke}"/>'
        )

    def text(self, p, s, size=12, color="#333333"):
        x, y = self.tx(p)
        self.parts.append(
            f'<text x="{_fmt(x)}" y="{_fmt(y)}" font-size="{size}"'
            f' fill="{color}" font-family="sans-serif">{s}</text>'
        )

    def tostring(self) -> str:
        body = "\n".join(self.parts)
        return (
            f'<svg xmlns="http://www.w3.org/2000/svg" width="{self.width:.0f}"'
            f' height="{self.height:.0f}" viewBox="0 0 {self.width:.0f}'
            f' {self.height:.0f}">\n<rect width="100%" height="100%"'
            f' fill="#fdfdf8"/>\n{body}\n</svg>\n'
        )


def render_trace(q: Polygon, trace: Trace, search_path: SearchPath = None) -> str:
    canvas = SvgCanvas(q.bbox)
    boundary = [(v.x, v.y) for v in q.vertices]
    canvas.polygon(boundary, BOUNDARY_COLOR)
    if search_path is not None:
        canvas.polyline(
            [(p.x, p.y) for p in search_path.polyline], PATH_COLOR, 1.0,
            dashed=True, opacity=0.7,
        )
    # Pursuer segments colored by mode; evader as one polyline.
    evader_pts = []
    for r in trace.records:
        if r.actor == "evader":
            if not evader_pts:
                evader_pts.append((r.frm.x, r.frm.y))
            evader_pts.append((r.to.x, r.to.y))
    canvas.polyline(evader_pts, EVADER_COLOR, 1.2, opacity=0.8)
    run = []
    run_mode = None
    for r in trace.records:
        if r.actor != "pursuer":
            continue
        color_mode = r.mode if r.mode in _MODE_COLORS else "search"
        if run_mode is None:
            run_mode = color_mode
            run = [(r.frm.x, r.frm.y)]
        if color_mode != run_mode:
            canvas.polyline(run, _MODE_COLORS[run_mode], 2.4)
            run = [run[-1]] if run else [(r.frm.x, r.frm.y)]
            run_mode = color_mode
        run.append((r.to.x, r.to.y))
    if run:
        canvas.polyline(run, _MODE_COLORS.get(run_mode, SEARCH_COLOR), 2.4)
    if trace.records:
        first_p = next((r for r in trace.records if r.actor == "pursuer"), None)
        first_e = next((r for r in trace.records if r.actor == "evader"), None)
        if first_p:
            canvas.circle((first_p.frm.x, first_p.frm.y), 5, SEARCH_COLOR)
        if first_e:
            canvas.circle((first_e.frm.x, first_e.frm.y), 5, EVADER_COLOR)
    if trace.capture_point is not None:
        canvas.circle(
            (trace.capture_point.x, trace.capture_point.y), 7, "none", "#cc8800"
        )
    return canvas.tostring()


def render_board(q: Polygon, search_path: SearchPath = None) -> str:
    canvas = SvgCanvas(q.bbox)
    canvas.polygon([(v.x, v.y) for v in q.vertices], BOUNDARY_COLOR)
    if search_path is not None:
        canvas.polyline(
            [(p.x, p.y) for p in search_path.polyline], PATH_COLOR, 1.2,
            dashed=True,
        )
    return canvas.tostring()
