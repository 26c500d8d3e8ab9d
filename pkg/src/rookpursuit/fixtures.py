"""Fixture polygons: hand-built boards exercising specific behaviors.

These are the boards used by tests, the CLI's demo commands, and the
replay examples: a featured monotone board whose search path is known
vertex-for-vertex, scallop boards with hiding pockets and escape chutes,
and small sweepable compositions.
"""

from __future__ import annotations

import math

from .geometry import Point, Polygon
from .sweep import (
    MonotoneAnnotation,
    ScallopAnnotation,
    SweepableAnnotation,
)


def monotone_zigzag_board():
    """Featured monotone polygon (three-times scale keeps unit features);
    the canonical search path crosses every feature type."""
    base = [
        (0, 1), (0.45, -0.3), (0.6, 0.2), (1.1, -1.5), (1.4, -0.4), (1.7, -1),
        (1.9, 0.5), (3, -1.75), (3.5, -0.75), (4.2, -1.5), (4.9, -0.5),
        (5.5, -1.6), (5.75, -1), (6, -1.7), (6.5, 0), (6.25, 1.5),
        (5.5, -0.75), (5, 2.1), (4.3, -0.2), (3.9, 0.5), (3.75, 1.8),
        (3.5, 1), (3.2, 2), (2.6, 0.2), (2.1, 1.9), (1.7, 1.3), (1.3, 1.8),
        (1, 0), (0.5, 2),
    ]
    poly = Polygon([(3 * x, 3 * y) for x, y in base])
    return poly, MonotoneAnnotation(Point(1, 0))


def monotone_corridor_board():
    """Tall rectangle with a lower hump: simple demos and replay tests."""
    poly = Polygon([(0, 0), (5, -2), (10, 0), (14, -1), (18, 0), (18, 6), (0, 6)])
    return poly, MonotoneAnnotation(Point(1, 0))


def scallop_fan_board():
    """Mild scallop fan about the origin."""
    lo, hi = math.radians(40), math.radians(140)
    near, far = [], []
    n = 8
    for k in range(n + 1):
        a = hi - (hi - lo) * k / n
        r = 7.0 + (1.2 if 0 < k < n and k % 2 else 0)
        near.append((r * math.cos(a), r * math.sin(a)))
    for adeg in (55, 75, 95, 115, 130):
        a = math.radians(adeg)
        far.append((12.5 * math.cos(a), 12.5 * math.sin(a)))
    return Polygon(near + far), ScallopAnnotation(Point(0, 0))


def scallop_hiding_board():
    """Scallop with a deep hanging vee on the far chain: a hiding pocket."""
    lo, hi = math.radians(40), math.radians(140)
    near = []
    n = 8
    for k in range(n + 1):
        a = hi - (hi - lo) * k / n
        r = 7.0 + (1.2 if 0 < k < n and k % 2 else 0)
        near.append((r * math.cos(a), r * math.sin(a)))
    far = []
    for adeg in (52, 70, 88, 95, 102, 120, 130):
        a = math.radians(adeg)
        r = 9.2 if adeg == 95 else 13.0 + (0.5 if adeg % 2 else 0)
        far.append((r * math.cos(a), r * math.sin(a)))
    return Polygon(near + far), ScallopAnnotation(Point(0, 0))


def scallop_chute_board():
    """Scallop whose near chain rises late, forming an escape chute."""
    lo, hi = math.radians(35), math.radians(140)
    near = []
    angles = (140, 125, 110, 95, 80, 62, 50, 35)
    for i, adeg in enumerate(angles):
        a = math.radians(adeg)
        r = 7.0 + (4.0 if adeg <= 62 else (1.3 if i % 2 else 0))
        near.append((r * math.cos(a), r * math.sin(a)))
    far = []
    for adeg in (45, 70, 90, 112, 128):
        a = math.radians(adeg)
        far.append((13.2 * math.cos(a), 13.2 * math.sin(a)))
    return Polygon(near + far), ScallopAnnotation(Point(0, 0))


def sweepable_two_piece_board():
    """Monotone strip feeding a scallop fan about a center below the cut."""
    low = [(0.0, 0.0), (2.5, -0.6), (5.0, 0.0), (8.0, 0.5)]
    center = Point(8.0, -7.5)
    r0 = 8.0
    span = 1.0
    n_sp = 3
    angs = [math.pi / 2 - span * (k + 1) / n_sp for k in range(n_sp)]
    near = []
    for k, a in enumerate(angs):
        r = r0 + (1.3 if k == 0 else 0.0)
        near.append((center.x + r * math.cos(a), center.y + r * math.sin(a)))
    far_r = r0 + 6.0
    far = [
        (center.x + far_r * math.cos(a), center.y + far_r * math.sin(a))
        for a in sorted(angs[:-1])
    ]
    up = [(8.0, 6.5), (5.0, 6.8), (2.5, 6.2), (0.0, 6.0)]
    poly = Polygon(low + near + far + up)
    cut = (Point(8.0, 0.5), Point(8.0, 6.5))
    ann = SweepableAnnotation(
        (MonotoneAnnotation(Point(1, 0)), ScallopAnnotation(center)), (cut,)
    )
    return poly, ann


def sweepable_three_piece_board():
    """Flat strip, a scallop fan turning the sweep by thirty degrees, then
    a second monotone strip heading the rotated way."""
    c = Point(8.0, -7.0)
    r_low, r_up = 7.3, 13.3

    def arc(r, adeg):
        a = math.radians(adeg)
        return (c.x + r * math.cos(a), c.y + r * math.sin(a))

    low1 = [(0.0, 0.0), (4.0, -0.5), (8.0, 0.3)]
    near = [arc(8.6, 80), arc(r_low, 70), arc(r_low, 60)]
    exit_dir = Point(math.cos(math.radians(60)), math.sin(math.radians(60)))
    axis3 = Point(exit_dir.y, -exit_dir.x)
    cut2_low = Point(*arc(r_low, 60))
    cut2_up = Point(*arc(r_up, 60))
    low3 = [
        (cut2_low.x + 6.0 * axis3.x, cut2_low.y + 6.0 * axis3.y),
    ]
    up3_end = (cut2_up.x + 6.0 * axis3.x, cut2_up.y + 6.0 * axis3.y)
    far = [arc(r_up, 65), arc(r_up, 75), arc(r_up, 85)]
    up1 = [(8.0, 6.3), (4.0, 6.5), (0.0, 6.0)]
    poly = Polygon(low1 + near + low3 + [up3_end, cut2_up] + far + up1)
    cut1 = (Point(8.0, 0.3), Point(8.0, 6.3))
    ann = SweepableAnnotation(
        (
            MonotoneAnnotation(Point(1, 0)),
            ScallopAnnotation(c),
            MonotoneAnnotation(axis3),
        ),
        (cut1, (cut2_low, cut2_up)),
    )
    return poly, ann


FIXTURES = {
    "monotone-zigzag": monotone_zigzag_board,
    "monotone-corridor": monotone_corridor_board,
    "scallop-fan": scallop_fan_board,
    "scallop-hiding": scallop_hiding_board,
    "scallop-chute": scallop_chute_board,
    "sweepable-two": sweepable_two_piece_board,
    "sweepable-three": sweepable_three_piece_board,
}


def load_fixture(name: str):
    try:
        return FIXTURES[name]()
    except KeyError:
        raise KeyError(
            f"unknown fixture {name!r}; available: {', '.join(sorted(FIXTURES))}"
        ) from None
