"""Deterministic gesture recognition over touch event streams.

Contact-count vocabulary: 1 finger draws strokes, 2 fingers pan or zoom
(whichever threshold is crossed first locks the mode), 3 fingers open
the palm menu — a swipe of the hand selects an item, a rotation of the
hand steps undo (counter-clockwise) or redo (clockwise).

The engine is a pure state machine over event timestamps: no wall
clock, no randomness, so replaying a trace always yields the same
event list. All thresholds live in EngineConfig.

Timing rules: contacts landing within settle_window ms of the first
Down (strictly less) join the gesture. The gesture classifies at the
first event at or past window expiry, or earlier when any settling
contact moves more than move_threshold px. A contact lifting during
settling classifies by the pre-lift count and closes immediately.
Gesture math anchors at classification time: 2- and 3-finger baselines
(inter-contact distance, centroid, contact angles) are the positions
when the mode was entered; 1-finger strokes keep their full path from
the Down (moves buffered during settling are emitted with StrokeBegin).
Up events close gestures but do not move accumulators; extra contacts
landing after classification are ignored, and any lift mid-gesture ends
the gesture, draining remaining contacts in a dead state.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, field
from enum import Enum

from .geometry import Vec, centroid, dist, screen_angle, wrap_deg
from .piemenu import (
    DegeneratePoseError, Handedness, MenuGeometry, MenuItem, PieMenuConfig,
    default_menu, fallback_pose, layout_menu, presenter_pose,
    select_from_displacement,
)
from .touch import Phase, StreamValidator, TouchEvent


class Mode(Enum):
    IDLE = "idle"
    SETTLING = "settling"
    STROKE = "stroke"
    TRANSFORM_PENDING = "transform_pending"
    TRANSFORM_LOCKED = "transform_locked"
    TRI_PENDING = "tri_pending"
    TRI_SWIPE = "tri_swipe"
    TRI_ROTATE = "tri_rotate"
    DEAD = "dead"


class TransformMode(Enum):
    PAN = "pan"
    ZOOM = "zoom"


# ---------------------------------------------------------------- events

@dataclass(frozen=True)
class StrokeBegin:
    point: Vec


@dataclass(frozen=True)
class StrokePoint:
    point: Vec


@dataclass(frozen=True)
class StrokeEnd:
    pass


@dataclass(frozen=True)
class TransformBegin:
    # The engine has no document, so it cannot name an object target;
    # it reports the gesture origin (initial centroid) and the document
    # layer hit-tests there to decide object vs canvas.
    mode: TransformMode
    origin: Vec


@dataclass(frozen=True)
class TransformDelta:
    translation: Vec  # incremental, screen px
    scale: float      # incremental ratio, 1.0 for pure pan
    pivot: Vec        # current centroid, screen px


@dataclass(frozen=True)
class TransformEnd:
    pass


@dataclass(frozen=True)
class UndoStep:
    pass


@dataclass(frozen=True)
class RedoStep:
    pass


@dataclass(frozen=True)
class MenuShown:
    geometry: MenuGeometry


@dataclass(frozen=True)
class MenuPreview:
    highlighted: int | None


@dataclass(frozen=True)
class MenuSelected:
    item: int


@dataclass(frozen=True)
class MenuCancelled:
    pass


GestureEvent = (
    StrokeBegin | StrokePoint | StrokeEnd
    | TransformBegin | TransformDelta | TransformEnd
    | UndoStep | RedoStep
    | MenuShown | MenuPreview | MenuSelected | MenuCancelled
)


# ---------------------------------------------------------------- config

@dataclass
class EngineConfig:
    settle_window: int = 80            # ms
    move_threshold: float = 8.0        # px, early classification
    selection_threshold: float = 30.0  # px, menu swipe
    zoom_ratio_threshold: float = 0.08
    pan_lock_distance: float = 12.0    # px
    rotation_threshold: float = 15.0   # degrees
    rotation_step: float = 30.0        # degrees per undo/redo step
    ccw_is_undo: bool = True
    combined_pan_zoom: bool = False
    menu: PieMenuConfig = field(default_factory=default_menu)

    def validate(self) -> list[str]:
        for name in ("settle_window", "move_threshold", "selection_threshold",
                     "zoom_ratio_threshold", "pan_lock_distance",
                     "rotation_threshold", "rotation_step"):
            if getattr(self, name) <= 0:
                raise ValueError(f"{name} must be strictly positive")
        if self.rotation_step < self.rotation_threshold:
            raise ValueError("rotation_step must be >= rotation_threshold")
        return self.menu.validate()

    def to_dict(self) -> dict:
        return {
            "settle_window": self.settle_window,
            "move_threshold": self.move_threshold,
            "selection_threshold": self.selection_threshold,
            "zoom_ratio_threshold": self.zoom_ratio_threshold,
            "pan_lock_distance": self.pan_lock_distance,
            "rotation_threshold": self.rotation_threshold,
            "rotation_step": self.rotation_step,
            "ccw_is_undo": self.ccw_is_undo,
            "combined_pan_zoom": self.combined_pan_zoom,
            "menu": {
                "items": [{"label": it.label, "action": it.action,
                           "center_angle": it.center_angle}
                          for it in self.menu.items],
                "radius": self.menu.radius,
                "offset_distance": self.menu.offset_distance,
                "offset_angle": self.menu.offset_angle,
                "handedness": self.menu.handedness.value,
            },
        }

    def to_json(self) -> str:
        """Canonical form: sorted keys, compact separators, LF-terminated."""
        return json.dumps(self.to_dict(), sort_keys=True,
                          separators=(",", ":")) + "\n"

    @classmethod
    def from_dict(cls, data: dict) -> EngineConfig:
        cfg = cls()
        for name in ("settle_window", "move_threshold", "selection_threshold",
                     "zoom_ratio_threshold", "pan_lock_distance",
                     "rotation_threshold", "rotation_step",
                     "ccw_is_undo", "combined_pan_zoom"):
            if name in data:
                setattr(cfg, name, data[name])
        if "menu" in data:
            m = data["menu"]
            cfg.menu = PieMenuConfig(
                items=[MenuItem(i["label"], i["action"], float(i["center_angle"]))
                       for i in m["items"]],
                radius=float(m.get("radius", 60.0)),
                offset_distance=float(m.get("offset_distance", 80.0)),
                offset_angle=float(m.get("offset_angle", 90.0)),
                handedness=Handedness(m.get("handedness", "right")),
            )
        cfg.validate()
        return cfg

    @classmethod
    def from_json(cls, text: str) -> EngineConfig:
        return cls.from_dict(json.loads(text))


# ---------------------------------------------------------------- engine

@dataclass
class _Contact:
    cid: int
    down_pos: Vec
    pos: Vec
    member: bool = True


class GestureEngine:
    """Feed TouchEvents in stream order; collect GestureEvents.

    process() raises StreamError on an illegal event and leaves the
    engine untouched. reset() returns to a fresh engine (including
    stream-legality bookkeeping, i.e. the caller restarts the stream).
    """

    def __init__(self, config: EngineConfig | None = None) -> None:
        self.config = config if config is not None else EngineConfig()
        self.config.validate()
        self.reset()

    def reset(self) -> None:
        self._validator = StreamValidator()
        self._mode = Mode.IDLE
        self._contacts: dict[int, _Contact] = {}  # arrival order
        self._settle_t0 = 0
        self._settle_moves: list[Vec] = []
        # 2-finger baselines
        self._tf_mode: TransformMode | None = None
        self._tf_centroid0: Vec = (0.0, 0.0)
        self._tf_dist0 = 0.0
        self._prev_centroid: Vec = (0.0, 0.0)
        self._prev_dist = 0.0
        # 3-finger baselines
        self._tri_centroid0: Vec = (0.0, 0.0)
        self._prev_angles: dict[int, float] = {}
        self._rho = 0.0
        self._steps = 0
        self._disp: Vec = (0.0, 0.0)

    @property
    def mode(self) -> Mode:
        return self._mode

    # -- helpers

    def _members(self) -> list[_Contact]:
        return [c for c in self._contacts.values() if c.member]

    def _member_centroid(self) -> Vec:
        return centroid([c.pos for c in self._members()])

    def _pair_distance(self) -> float:
        a, b = self._members()
        return dist(a.pos, b.pos)

    def _menu_geometry(self) -> MenuGeometry:
        pts = sorted(c.pos for c in self._members())
        try:
            pose = presenter_pose(pts, self.config.menu)
        except DegeneratePoseError:
            pose = fallback_pose(pts, self.config.menu)
        return layout_menu(pose, self.config.menu)

    def _after_gesture(self) -> Mode:
        return Mode.DEAD if self._contacts else Mode.IDLE

    # -- classification

    def _classify(self) -> list[GestureEvent]:
        members = self._members()
        n = len(members)
        if n == 1:
            self._mode = Mode.STROKE
            c = members[0]
            out: list[GestureEvent] = [StrokeBegin(c.down_pos)]
            out.extend(StrokePoint(p) for p in self._settle_moves)
            return out
        if n == 2:
            self._mode = Mode.TRANSFORM_PENDING
            self._tf_centroid0 = self._member_centroid()
            self._tf_dist0 = self._pair_distance()
            self._prev_centroid = self._tf_centroid0
            self._prev_dist = self._tf_dist0
            return []
        self._mode = Mode.TRI_PENDING
        self._tri_centroid0 = self._member_centroid()
        self._prev_angles = {
            c.cid: screen_angle((c.pos[0] - self._tri_centroid0[0],
                                 c.pos[1] - self._tri_centroid0[1]))
            for c in members}
        self._rho = 0.0
        self._steps = 0
        self._disp = (0.0, 0.0)
        return [MenuShown(self._menu_geometry())]

    def _close(self) -> list[GestureEvent]:
        """Closing events for the current gesture (first lift ends it)."""
        mode = self._mode
        if mode is Mode.STROKE:
            return [StrokeEnd()]
        if mode is Mode.TRANSFORM_LOCKED:
            return [TransformEnd()]
        if mode is Mode.TRI_PENDING:
            return [MenuCancelled()]
        if mode is Mode.TRI_SWIPE:
            sel = select_from_displacement(self._disp, self.config.menu,
                                           self.config.selection_threshold)
            return [MenuSelected(sel)] if sel is not None else [MenuCancelled()]
        # TRANSFORM_PENDING never opened a bracket; TRI_ROTATE closed its
        # menu bracket on entry and undo/redo steps need no end marker.
        return []

    # -- rotation steps

    def _rotation_events(self) -> list[GestureEvent]:
        step = self.config.rotation_step
        target = int(math.floor(abs(self._rho) / step))
        if self._rho < 0:
            target = -target
        out: list[GestureEvent] = []
        plus = UndoStep if self.config.ccw_is_undo else RedoStep
        minus = RedoStep if self.config.ccw_is_undo else UndoStep
        while self._steps < target:
            out.append(plus())
            self._steps += 1
        while self._steps > target:
            out.append(minus())
            self._steps -= 1
        return out

    def _accumulate_tri(self) -> None:
        members = self._members()
        c = self._member_centroid()
        deltas = []
        for m in members:
            a = screen_angle((m.pos[0] - c[0], m.pos[1] - c[1]))
            deltas.append(wrap_deg(a - self._prev_angles[m.cid]))
            self._prev_angles[m.cid] = a
        self._rho += sum(deltas) / len(deltas)
        self._disp = (c[0] - self._tri_centroid0[0], c[1] - self._tri_centroid0[1])

    # -- main entry

    def process(self, ev: TouchEvent) -> list[GestureEvent]:
        self._validator.feed(ev)  # raises before any engine mutation
        out: list[GestureEvent] = []

        # settle window expiry happens before the event is interpreted
        if self._mode is Mode.SETTLING and ev.t - self._settle_t0 >= self.config.settle_window:
            out.extend(self._classify())

        handler = {
            Mode.IDLE: self._on_idle,
            Mode.SETTLING: self._on_settling,
            Mode.STROKE: self._on_stroke,
            Mode.TRANSFORM_PENDING: self._on_transform,
            Mode.TRANSFORM_LOCKED: self._on_transform,
            Mode.TRI_PENDING: self._on_tri,
            Mode.TRI_SWIPE: self._on_tri,
            Mode.TRI_ROTATE: self._on_tri,
            Mode.DEAD: self._on_dead,
        }[self._mode]
        out.extend(handler(ev))
        return out

    # -- per-mode handlers

    def _on_idle(self, ev: TouchEvent) -> list[GestureEvent]:
        # stream legality guarantees the first event of a gesture is a Down
        self._contacts = {ev.id: _Contact(ev.id, ev.pos, ev.pos)}
        self._settle_t0 = ev.t
        self._settle_moves = []
        self._mode = Mode.SETTLING
        return []

    def _on_settling(self, ev: TouchEvent) -> list[GestureEvent]:
        if ev.phase is Phase.DOWN:
            if len(self._members()) >= 3:
                # a 4th finger during settling kills the gesture silently
                self._contacts[ev.id] = _Contact(ev.id, ev.pos, ev.pos)
                self._mode = Mode.DEAD
                return []
            self._contacts[ev.id] = _Contact(ev.id, ev.pos, ev.pos)
            return []
        if ev.phase is Phase.MOVE:
            c = self._contacts[ev.id]
            c.pos = ev.pos
            self._settle_moves.append(ev.pos)
            if dist(ev.pos, c.down_pos) > self.config.move_threshold:
                return self._classify()
            return []
        # Up during settling: classify by pre-lift count, close immediately
        n = len(self._members())
        out: list[GestureEvent] = []
        if n == 1:
            c = self._contacts[ev.id]
            out.append(StrokeBegin(c.down_pos))
            out.extend(StrokePoint(p) for p in self._settle_moves)
            out.append(StrokeEnd())
        elif n == 3:
            out.append(MenuShown(self._menu_geometry()))
            out.append(MenuCancelled())
        # n == 2: a transform that never locked opens no bracket
        del self._contacts[ev.id]
        self._mode = self._after_gesture()
        return out

    def _on_stroke(self, ev: TouchEvent) -> list[GestureEvent]:
        if ev.phase is Phase.DOWN:
            self._contacts[ev.id] = _Contact(ev.id, ev.pos, ev.pos, member=False)
            return []
        contact = self._contacts[ev.id]
        if ev.phase is Phase.MOVE:
            contact.pos = ev.pos
            return [StrokePoint(ev.pos)] if contact.member else []
        out = self._close()
        del self._contacts[ev.id]
        self._mode = self._after_gesture()
        return out

    def _on_transform(self, ev: TouchEvent) -> list[GestureEvent]:
        if ev.phase is Phase.DOWN:
            self._contacts[ev.id] = _Contact(ev.id, ev.pos, ev.pos, member=False)
            return []
        contact = self._contacts[ev.id]
        if ev.phase is Phase.UP:
            out = self._close()
            del self._contacts[ev.id]
            self._mode = self._after_gesture()
            return out
        contact.pos = ev.pos
        if not contact.member:
            return []
        c = self._member_centroid()
        d = self._pair_distance()
        if self._mode is Mode.TRANSFORM_PENDING:
            ratio = d / self._tf_dist0 if self._tf_dist0 > 0 else 1.0
            travel = dist(c, self._tf_centroid0)
            zoom_hit = abs(ratio - 1.0) > self.config.zoom_ratio_threshold
            pan_hit = travel >= self.config.pan_lock_distance
            if not (zoom_hit or pan_hit):
                return []
            # zoom wins a same-event tie: the distance change is the
            # stronger evidence of intent
            self._tf_mode = TransformMode.ZOOM if zoom_hit else TransformMode.PAN
            self._mode = Mode.TRANSFORM_LOCKED
            out: list[GestureEvent] = [TransformBegin(self._tf_mode, self._tf_centroid0)]
            # first delta carries everything accumulated since the anchor
            scale = ratio if self._wants_scale() else 1.0
            out.append(TransformDelta(
                (c[0] - self._tf_centroid0[0], c[1] - self._tf_centroid0[1]),
                scale if scale > 0 else 1.0, c))
            self._prev_centroid = c
            self._prev_dist = d
            return out
        # locked: emit the per-move increment
        if self._wants_scale() and self._prev_dist > 0 and d > 0:
            scale = d / self._prev_dist
        else:
            scale = 1.0
        out = [TransformDelta(
            (c[0] - self._prev_centroid[0], c[1] - self._prev_centroid[1]),
            scale, c)]
        self._prev_centroid = c
        if d > 0:
            self._prev_dist = d
        return out

    def _wants_scale(self) -> bool:
        if self._tf_mode is TransformMode.ZOOM:
            return True
        return self.config.combined_pan_zoom

    def _on_tri(self, ev: TouchEvent) -> list[GestureEvent]:
        if ev.phase is Phase.DOWN:
            self._contacts[ev.id] = _Contact(ev.id, ev.pos, ev.pos, member=False)
            return []
        contact = self._contacts[ev.id]
        if ev.phase is Phase.UP:
            out = self._close()
            del self._contacts[ev.id]
            self._mode = self._after_gesture()
            return out
        contact.pos = ev.pos
        if not contact.member:
            return []
        self._accumulate_tri()
        if self._mode is Mode.TRI_PENDING:
            if math.hypot(*self._disp) > self.config.selection_threshold:
                self._mode = Mode.TRI_SWIPE
                return [MenuPreview(select_from_displacement(
                    self._disp, self.config.menu, self.config.selection_threshold))]
            if abs(self._rho) > self.config.rotation_threshold:
                self._mode = Mode.TRI_ROTATE
                return [MenuCancelled(), *self._rotation_events()]
            return []
        if self._mode is Mode.TRI_SWIPE:
            return [MenuPreview(select_from_displacement(
                self._disp, self.config.menu, self.config.selection_threshold))]
        return self._rotation_events()

    def _on_dead(self, ev: TouchEvent) -> list[GestureEvent]:
        if ev.phase is Phase.DOWN:
            self._contacts[ev.id] = _Contact(ev.id, ev.pos, ev.pos, member=False)
        elif ev.phase is Phase.MOVE:
            self._contacts[ev.id].pos = ev.pos
        else:
            del self._contacts[ev.id]
            if not self._contacts:
                self._mode = Mode.IDLE
        return []


def run_engine(events: list[TouchEvent],
               config: EngineConfig | None = None) -> list[GestureEvent]:
    """Feed a whole stream through a fresh engine and collect the output.

    A well-formed trace lifts every contact, and the first Up of a
    gesture always closes it, so nothing is left pending at the end.
    """
    eng = GestureEngine(config)
    out: list[GestureEvent] = []
    for ev in events:
        out.extend(eng.process(ev))
    return out
