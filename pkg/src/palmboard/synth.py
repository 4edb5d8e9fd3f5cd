"""Synthetic touch traces for tests, the golden corpus, and demos.

Every builder returns a TouchTrace whose events interleave per-contact
moves the way a real controller reports them (one contact per event,
shared timestamps allowed). Between two events of the same frame the
engine sees half-updated geometry, so builders keep per-event increments
small: a translation step shifts the inter-contact distance ratio by at
most step/d0, which must stay inside zoom_ratio_threshold, and a zoom
step displaces the centroid by step/2, which must stay inside
pan_lock_distance. Defaults are sized for the default EngineConfig at
1920x1080 with 60 Hz frame spacing.
"""

from __future__ import annotations

import math

from .geometry import Vec, centroid, rotate_screen, unit_from_angle
from .touch import Phase, TouchEvent, TouchTrace

WIDTH, HEIGHT = 1920, 1080
FRAME_MS = 16       # ~60 Hz
HOLD_MS = 96        # first motion after the 80 ms settle window


class TraceBuilder:
    """Append events with non-decreasing timestamps and bounds checks."""

    def __init__(self, width: int = WIDTH, height: int = HEIGHT, t: int = 0):
        self.width = width
        self.height = height
        self.t = t
        self.events: list[TouchEvent] = []

    def _push(self, cid: int, phase: Phase, pos: Vec) -> None:
        x, y = pos
        if not (0.0 <= x <= self.width and 0.0 <= y <= self.height):
            raise ValueError(f"({x:g},{y:g}) outside {self.width}x{self.height}")
        self.events.append(TouchEvent(self.t, cid, phase, float(x), float(y)))

    def advance(self, ms: int) -> "TraceBuilder":
        self.t += ms
        return self

    def down(self, cid: int, pos: Vec) -> "TraceBuilder":
        self._push(cid, Phase.DOWN, pos)
        return self

    def move(self, cid: int, pos: Vec) -> "TraceBuilder":
        self._push(cid, Phase.MOVE, pos)
        return self

    def up(self, cid: int, pos: Vec) -> "TraceBuilder":
        self._push(cid, Phase.UP, pos)
        return self

    def build(self) -> TouchTrace:
        return TouchTrace(self.width, self.height, list(self.events))


def _lerp(a: Vec, b: Vec, k: float) -> Vec:
    return (a[0] + (b[0] - a[0]) * k, a[1] + (b[1] - a[1]) * k)


def stroke_trace(points: list[Vec], width: int = WIDTH, height: int = HEIGHT,
                 hold: int = HOLD_MS) -> TouchTrace:
    """One finger: down at points[0], then a move per remaining point."""
    b = TraceBuilder(width, height)
    b.down(0, points[0])
    b.advance(hold)
    for p in points[1:]:
        b.move(0, p)
        b.advance(FRAME_MS)
    b.up(0, points[-1])
    return b.build()


def tap_trace(point: Vec, duration: int = 40,
              width: int = WIDTH, height: int = HEIGHT) -> TouchTrace:
    """Quick 1-finger tap inside the settle window (a dot)."""
    b = TraceBuilder(width, height)
    b.down(0, point)
    b.advance(duration)
    b.up(0, point)
    return b.build()


def pan_trace(a: Vec, bpos: Vec, delta: Vec, steps: int = 16,
              width: int = WIDTH, height: int = HEIGHT) -> TouchTrace:
    """Two fingers translating rigidly by delta (constant separation)."""
    d0 = math.hypot(a[0] - bpos[0], a[1] - bpos[1])
    per = math.hypot(*delta) / steps
    if d0 > 0 and per / d0 > 0.07:
        raise ValueError("step too large: transient ratio would cross the zoom lock")
    b = TraceBuilder(width, height)
    b.down(0, a)
    b.advance(4).down(1, bpos)
    b.advance(HOLD_MS - 4)
    for i in range(1, steps + 1):
        k = i / steps
        b.move(0, _lerp(a, (a[0] + delta[0], a[1] + delta[1]), k))
        b.move(1, _lerp(bpos, (bpos[0] + delta[0], bpos[1] + delta[1]), k))
        b.advance(FRAME_MS)
    b.up(0, (a[0] + delta[0], a[1] + delta[1]))
    b.up(1, (bpos[0] + delta[0], bpos[1] + delta[1]))
    return b.build()


def zoom_trace(center: Vec, half: Vec, factor: float, steps: int = 16,
               width: int = WIDTH, height: int = HEIGHT) -> TouchTrace:
    """Two fingers at center +/- half scaling their separation by factor
    symmetrically (centroid fixed)."""
    per_px = abs(factor - 1.0) * math.hypot(*half) / steps
    if per_px / 2.0 > 10.0:
        raise ValueError("step too large: transient centroid travel would lock pan")
    b = TraceBuilder(width, height)
    p0 = (center[0] + half[0], center[1] + half[1])
    p1 = (center[0] - half[0], center[1] - half[1])
    b.down(0, p0)
    b.advance(4).down(1, p1)
    b.advance(HOLD_MS - 4)
    for i in range(1, steps + 1):
        k = 1.0 + (factor - 1.0) * i / steps
        b.move(0, (center[0] + half[0] * k, center[1] + half[1] * k))
        b.move(1, (center[0] - half[0] * k, center[1] - half[1] * k))
        b.advance(FRAME_MS)
    b.up(0, (center[0] + half[0] * factor, center[1] + half[1] * factor))
    b.up(1, (center[0] - half[0] * factor, center[1] - half[1] * factor))
    return b.build()


def rotate_trace(contacts: list[Vec], angle_deg: float, steps: int | None = None,
                 width: int = WIDTH, height: int = HEIGHT) -> TouchTrace:
    """Three fingers rotating rigidly by angle_deg (counter-clockwise on
    screen when positive) about their initial centroid."""
    if steps is None:
        steps = max(8, int(math.ceil(abs(angle_deg) / 2.0)))
    c = centroid(contacts)
    b = TraceBuilder(width, height)
    for i, p in enumerate(contacts):
        if i:
            b.advance(4)
        b.down(i, p)
    b.advance(HOLD_MS - 4 * (len(contacts) - 1))
    for s in range(1, steps + 1):
        a = angle_deg * s / steps
        for i, p in enumerate(contacts):
            rel = (p[0] - c[0], p[1] - c[1])
            q = rotate_screen(rel, a)
            b.move(i, (c[0] + q[0], c[1] + q[1]))
        b.advance(FRAME_MS)
    for i, p in enumerate(contacts):
        rel = (p[0] - c[0], p[1] - c[1])
        q = rotate_screen(rel, angle_deg)
        b.up(i, (c[0] + q[0], c[1] + q[1]))
    return b.build()


def menu_swipe_trace(contacts: list[Vec], direction_deg: float, distance: float,
                     steps: int = 14, width: int = WIDTH, height: int = HEIGHT
                     ) -> TouchTrace:
    """Three fingers translating rigidly along a screen direction (a menu
    selection swipe)."""
    u = unit_from_angle(direction_deg)
    delta = (u[0] * distance, u[1] * distance)
    b = TraceBuilder(width, height)
    for i, p in enumerate(contacts):
        if i:
            b.advance(4)
        b.down(i, p)
    b.advance(HOLD_MS - 4 * (len(contacts) - 1))
    for s in range(1, steps + 1):
        k = s / steps
        for i, p in enumerate(contacts):
            b.move(i, (p[0] + delta[0] * k, p[1] + delta[1] * k))
        b.advance(FRAME_MS)
    for i, p in enumerate(contacts):
        b.up(i, (p[0] + delta[0], p[1] + delta[1]))
    return b.build()


def menu_tap_trace(contacts: list[Vec], hold: int = 160,
                   width: int = WIDTH, height: int = HEIGHT) -> TouchTrace:
    """Three fingers resting past the settle window, then lifting: shows
    the menu and cancels it."""
    b = TraceBuilder(width, height)
    for i, p in enumerate(contacts):
        if i:
            b.advance(4)
        b.down(i, p)
    b.advance(hold)
    for i, p in enumerate(contacts):
        b.up(i, p)
        if i < len(contacts) - 1:
            b.advance(4)
    return b.build()
