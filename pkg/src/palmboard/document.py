"""Slide/canvas document model driven by gesture events.

Content state is slides of objects (strokes, images) with a per-slide
canvas transform, plus selection and clipboard. Every mutating command
stores full before/after content snapshots, so undo/redo restore state
exactly — the canonical serialization (sorted keys, compact separators,
shortest round-trip floats, one LF-terminated line) is byte-equal after
any undo of any command. Undo/redo stacks are deliberately not part of
the serialization: two documents with the same content are the same
document.

Coordinates: object geometry lives in world units; the canvas transform
maps world to screen as scale * p + (tx, ty). Gesture events arrive in
screen units and are converted here.
"""

from __future__ import annotations

import copy
import json
from dataclasses import dataclass, field

from .geometry import Vec
from .piemenu import PieMenuConfig
from . import gestures as g

SCALE_MIN, SCALE_MAX = 0.05, 20.0
DEFAULT_STROKE_COLOR = "#000000"
DEFAULT_STROKE_WIDTH = 2.0
DUPLICATE_OFFSET = (20.0, 20.0)  # world units
OVERVIEW_FILL = 0.9              # content fills 90%: a 5% margin per side


class DocumentFormatError(ValueError):
    """Raised when document text cannot be parsed."""


@dataclass
class Command:
    kind: str
    params: dict
    before: dict
    after: dict


class Document:
    def __init__(self, slides: int = 1, viewport: tuple[int, int] = (1920, 1080)):
        if slides < 1:
            raise ValueError("a document has at least one slide")
        self.viewport = (int(viewport[0]), int(viewport[1]))
        self.slides = [self._new_slide() for _ in range(slides)]
        self.current_slide = 0
        self.selection: int | None = None
        self.clipboard: dict | None = None
        self.undo_stack: list[Command] = []
        self.redo_stack: list[Command] = []
        # live gesture state, never serialized
        self._pending_stroke: list[Vec] | None = None
        self._tf: dict | None = None

    # ------------------------------------------------------------ state

    @staticmethod
    def _new_slide() -> dict:
        return {"objects": [], "transform": {"scale": 1.0, "tx": 0.0, "ty": 0.0}}

    @property
    def slide(self) -> dict:
        return self.slides[self.current_slide]

    @property
    def transform(self) -> dict:
        return self.slide["transform"]

    @property
    def pending_stroke(self) -> list[Vec] | None:
        return list(self._pending_stroke) if self._pending_stroke else None

    def cancel_gesture(self) -> None:
        """Drop live gesture state without committing anything. Content
        already mutated by transform deltas stays as-is but records no
        command; used when the engine is reset mid-gesture."""
        self._pending_stroke = None
        self._tf = None

    def content_state(self) -> dict:
        return {
            "clipboard": copy.deepcopy(self.clipboard),
            "current_slide": self.current_slide,
            "selection": self.selection,
            "slides": copy.deepcopy(self.slides),
            "viewport": [self.viewport[0], self.viewport[1]],
        }

    def _restore(self, state: dict) -> None:
        state = copy.deepcopy(state)
        self.clipboard = state["clipboard"]
        self.current_slide = state["current_slide"]
        self.selection = state["selection"]
        self.slides = state["slides"]
        self.viewport = (state["viewport"][0], state["viewport"][1])

    def serialize(self) -> str:
        return json.dumps(self.content_state(), sort_keys=True,
                          separators=(",", ":")) + "\n"

    @classmethod
    def deserialize(cls, text: str) -> Document:
        try:
            state = json.loads(text)
        except json.JSONDecodeError as e:
            raise DocumentFormatError(f"line {e.lineno} col {e.colno}: {e.msg}") from None
        doc = cls()
        try:
            doc._load_state(state)
        except (KeyError, TypeError, IndexError, ValueError) as e:
            raise DocumentFormatError(f"bad document structure: {e}") from None
        return doc

    def _load_state(self, state: dict) -> None:
        slides = []
        for si, s in enumerate(state["slides"]):
            t = s["transform"]
            scale = float(t["scale"])
            if not (SCALE_MIN <= scale <= SCALE_MAX):
                raise ValueError(f"slide {si}: scale {scale} outside clamp range")
            objects = []
            for oi, obj in enumerate(s["objects"]):
                objects.append(_check_object(obj, f"slide {si} object {oi}"))
            slides.append({
                "objects": objects,
                "transform": {"scale": scale, "tx": float(t["tx"]), "ty": float(t["ty"])},
            })
        current = int(state["current_slide"])
        if not (0 <= current < len(slides)):
            raise ValueError(f"current_slide {current} out of range")
        selection = state["selection"]
        if selection is not None:
            selection = int(selection)
            if not (0 <= selection < len(slides[current]["objects"])):
                raise ValueError(f"selection {selection} out of range")
        vw, vh = state["viewport"]
        self.slides = slides
        self.current_slide = current
        self.selection = selection
        self.clipboard = copy.deepcopy(state["clipboard"])
        self.viewport = (int(vw), int(vh))
        self.undo_stack = []
        self.redo_stack = []

    # ----------------------------------------------------- command core

    def _commit(self, kind: str, params: dict, before: dict) -> None:
        after = self.content_state()
        self.undo_stack.append(Command(kind, params, before, after))
        self.redo_stack.clear()

    def undo(self) -> list[str]:
        if not self.undo_stack:
            return ["undo: nothing to undo"]
        cmd = self.undo_stack.pop()
        self.redo_stack.append(cmd)
        self._restore(cmd.before)
        return []

    def redo(self) -> list[str]:
        if not self.redo_stack:
            return ["redo: nothing to redo"]
        cmd = self.redo_stack.pop()
        self.undo_stack.append(cmd)
        self._restore(cmd.after)
        return []

    # -------------------------------------------------- coordinate maps

    def to_world(self, p: Vec) -> Vec:
        t = self.transform
        return ((p[0] - t["tx"]) / t["scale"], (p[1] - t["ty"]) / t["scale"])

    def to_screen(self, p: Vec) -> Vec:
        t = self.transform
        return (t["scale"] * p[0] + t["tx"], t["scale"] * p[1] + t["ty"])

    def hit_test(self, screen_point: Vec) -> int | None:
        """Topmost object (later in z-order) whose bounds contain the
        point: stroke bbox inflated by half its width, image rect."""
        x, y = self.to_world(screen_point)
        for idx in range(len(self.slide["objects"]) - 1, -1, -1):
            obj = self.slide["objects"][idx]
            if obj["kind"] == "stroke":
                xs = [p[0] for p in obj["points"]]
                ys = [p[1] for p in obj["points"]]
                r = obj["width"] / 2.0
                if min(xs) - r <= x <= max(xs) + r and min(ys) - r <= y <= max(ys) + r:
                    return idx
            else:
                rx, ry, rw, rh = obj["rect"]
                if rx <= x <= rx + rw and ry <= y <= ry + rh:
                    return idx
        return None

    # ----------------------------------------------------------- editing

    def add_stroke(self, points_world: list[Vec], color: str = DEFAULT_STROKE_COLOR,
                   width: float = DEFAULT_STROKE_WIDTH) -> list[str]:
        if len(points_world) < 2:
            raise ValueError("a stroke needs at least 2 points")
        before = self.content_state()
        self.slide["objects"].append({
            "kind": "stroke",
            "points": [[float(x), float(y)] for x, y in points_world],
            "color": color,
            "width": float(width),
        })
        self._commit("add_stroke", {"points": len(points_world)}, before)
        return []

    def add_image(self, rect: tuple[float, float, float, float],
                  resource: str) -> list[str]:
        if rect[2] <= 0 or rect[3] <= 0:
            raise ValueError("image rect needs positive width and height")
        before = self.content_state()
        self.slide["objects"].append({
            "kind": "image",
            "rect": [float(v) for v in rect],
            "resource": resource,
        })
        self._commit("add_image", {"resource": resource}, before)
        return []

    def move_object(self, index: int, delta_world: Vec) -> list[str]:
        before = self.content_state()
        self._translate_object(index, delta_world)
        self._commit("move_object", {"index": index,
                                     "delta": [delta_world[0], delta_world[1]]},
                     before)
        return []

    def scale_object(self, index: int, factor: float, pivot_world: Vec) -> list[str]:
        if factor <= 0:
            raise ValueError("scale factor must be positive")
        before = self.content_state()
        self._scale_object(index, factor, pivot_world)
        self._commit("scale_object", {"index": index, "factor": factor}, before)
        return []

    def _translate_object(self, index: int, d: Vec) -> None:
        obj = self.slide["objects"][index]
        if obj["kind"] == "stroke":
            obj["points"] = [[p[0] + d[0], p[1] + d[1]] for p in obj["points"]]
        else:
            r = obj["rect"]
            obj["rect"] = [r[0] + d[0], r[1] + d[1], r[2], r[3]]

    def _scale_object(self, index: int, f: float, pivot: Vec) -> None:
        obj = self.slide["objects"][index]
        if obj["kind"] == "stroke":
            obj["points"] = [[pivot[0] + f * (p[0] - pivot[0]),
                              pivot[1] + f * (p[1] - pivot[1])] for p in obj["points"]]
            obj["width"] = obj["width"] * f
        else:
            r = obj["rect"]
            obj["rect"] = [pivot[0] + f * (r[0] - pivot[0]),
                           pivot[1] + f * (r[1] - pivot[1]), r[2] * f, r[3] * f]

    def pan_canvas(self, delta_screen: Vec) -> list[str]:
        if delta_screen == (0.0, 0.0):
            return ["pan_canvas: zero delta is a no-op"]
        before = self.content_state()
        t = self.transform
        t["tx"] += delta_screen[0]
        t["ty"] += delta_screen[1]
        self._commit("pan_canvas", {"delta": list(delta_screen)}, before)
        return []

    def _zoom_canvas_raw(self, factor: float, pivot_screen: Vec) -> bool:
        """Returns True when the transform actually changed."""
        t = self.transform
        new_scale = min(max(t["scale"] * factor, SCALE_MIN), SCALE_MAX)
        if new_scale == t["scale"] and factor != 1.0:
            return False  # pinned at the clamp
        if factor == 1.0:
            return False
        eff = new_scale / t["scale"]
        t["tx"] = pivot_screen[0] - eff * (pivot_screen[0] - t["tx"])
        t["ty"] = pivot_screen[1] - eff * (pivot_screen[1] - t["ty"])
        t["scale"] = new_scale
        return True

    def zoom_canvas(self, factor: float, pivot_screen: Vec) -> list[str]:
        if factor <= 0:
            raise ValueError("zoom factor must be positive")
        before = self.content_state()
        if not self._zoom_canvas_raw(factor, pivot_screen):
            return ["zoom_canvas: no-op (identity factor or clamp pinned)"]
        self._commit("zoom_canvas", {"factor": factor}, before)
        return []

    # ------------------------------------------------------- navigation

    def next_slide(self) -> list[str]:
        if self.current_slide >= len(self.slides) - 1:
            return ["next_slide: already at the last slide"]
        before = self.content_state()
        self.current_slide += 1
        self.selection = None
        self._commit("next_slide", {}, before)
        return []

    def prev_slide(self) -> list[str]:
        if self.current_slide <= 0:
            return ["prev_slide: already at the first slide"]
        before = self.content_state()
        self.current_slide -= 1
        self.selection = None
        self._commit("prev_slide", {}, before)
        return []

    def overview(self) -> list[str]:
        """Fit all current-slide content into the viewport with a 5%
        margin per side; empty slide resets to the identity transform."""
        t = self.transform
        prev = dict(t)
        bbox = self._content_bbox()
        if bbox is None:
            new = {"scale": 1.0, "tx": 0.0, "ty": 0.0}
        else:
            x0, y0, x1, y1 = bbox
            bw, bh = x1 - x0, y1 - y0
            vw, vh = float(self.viewport[0]), float(self.viewport[1])
            candidates = []
            if bw > 0:
                candidates.append(OVERVIEW_FILL * vw / bw)
            if bh > 0:
                candidates.append(OVERVIEW_FILL * vh / bh)
            scale = min(candidates) if candidates else 1.0
            scale = min(max(scale, SCALE_MIN), SCALE_MAX)
            cx, cy = (x0 + x1) / 2.0, (y0 + y1) / 2.0
            new = {"scale": scale,
                   "tx": vw / 2.0 - scale * cx,
                   "ty": vh / 2.0 - scale * cy}
        if new == prev:
            return ["overview: transform already fits"]
        before = self.content_state()
        self.slide["transform"] = new
        self._commit("overview", {"prev": [prev["scale"], prev["tx"], prev["ty"]]},
                     before)
        return []

    def _content_bbox(self) -> tuple[float, float, float, float] | None:
        xs: list[float] = []
        ys: list[float] = []
        for obj in self.slide["objects"]:
            if obj["kind"] == "stroke":
                r = obj["width"] / 2.0
                xs.extend([min(p[0] for p in obj["points"]) - r,
                           max(p[0] for p in obj["points"]) + r])
                ys.extend([min(p[1] for p in obj["points"]) - r,
                           max(p[1] for p in obj["points"]) + r])
            else:
                rx, ry, rw, rh = obj["rect"]
                xs.extend([rx, rx + rw])
                ys.extend([ry, ry + rh])
        if not xs:
            return None
        return (min(xs), min(ys), max(xs), max(ys))

    def duplicate_selection(self) -> list[str]:
        if self.selection is None:
            return ["duplicate_selection: nothing selected"]
        before = self.content_state()
        original = self.slide["objects"][self.selection]
        self.clipboard = copy.deepcopy(original)
        clone = copy.deepcopy(original)
        if clone["kind"] == "stroke":
            clone["points"] = [[p[0] + DUPLICATE_OFFSET[0], p[1] + DUPLICATE_OFFSET[1]]
                               for p in clone["points"]]
        else:
            r = clone["rect"]
            clone["rect"] = [r[0] + DUPLICATE_OFFSET[0], r[1] + DUPLICATE_OFFSET[1],
                             r[2], r[3]]
        self.slide["objects"].append(clone)
        self.selection = len(self.slide["objects"]) - 1
        self._commit("duplicate_selection", {"offset": list(DUPLICATE_OFFSET)}, before)
        return []

    # ---------------------------------------------------- gesture sink

    ACTIONS = {
        "prev_slide": "prev_slide",
        "next_slide": "next_slide",
        "overview": "overview",
        "duplicate_selection": "duplicate_selection",
    }

    def apply_gesture(self, event: g.GestureEvent,
                      menu: PieMenuConfig | None = None) -> list[str]:
        """Apply one engine event. Returns diagnostics for no-ops and
        unbindable actions; never raises for content reasons."""
        if isinstance(event, g.StrokeBegin):
            self._pending_stroke = [event.point]
            return []
        if isinstance(event, g.StrokePoint):
            if self._pending_stroke is None:
                return ["stroke point outside a stroke gesture"]
            self._pending_stroke.append(event.point)
            return []
        if isinstance(event, g.StrokeEnd):
            if self._pending_stroke is None:
                return ["stroke end outside a stroke gesture"]
            pts = [self.to_world(p) for p in self._pending_stroke]
            self._pending_stroke = None
            if len(pts) == 1:
                pts = pts * 2  # a tap commits as a dot
            return self.add_stroke(pts)
        if isinstance(event, g.TransformBegin):
            target = self.hit_test(event.origin)
            before = self.content_state()
            if target is not None:
                self.selection = target
            self._tf = {"target": target, "before": before,
                        "net_translation": [0.0, 0.0], "net_scale": 1.0,
                        "pivot": event.origin, "changed": target is not None}
            return []
        if isinstance(event, g.TransformDelta):
            return self._apply_delta(event)
        if isinstance(event, g.TransformEnd):
            return self._end_transform()
        if isinstance(event, g.UndoStep):
            return self.undo()
        if isinstance(event, g.RedoStep):
            return self.redo()
        if isinstance(event, g.MenuSelected):
            if menu is None:
                return ["menu selection arrived without a menu binding"]
            if not (0 <= event.item < len(menu.items)):
                return [f"menu selection {event.item} out of range"]
            action = menu.items[event.item].action
            method = self.ACTIONS.get(action)
            if method is None:
                return [f"menu action {action!r} is not bound"]
            return getattr(self, method)()
        # MenuShown / MenuPreview / MenuCancelled leave content alone
        return []

    def _apply_delta(self, ev: g.TransformDelta) -> list[str]:
        if self._tf is None:
            return ["transform delta outside a transform gesture"]
        tf = self._tf
        tf["net_translation"][0] += ev.translation[0]
        tf["net_translation"][1] += ev.translation[1]
        tf["net_scale"] *= ev.scale
        tf["pivot"] = ev.pivot
        if tf["target"] is None:
            if ev.scale != 1.0:
                if self._zoom_canvas_raw(ev.scale, ev.pivot):
                    tf["changed"] = True
            if ev.translation != (0.0, 0.0):
                t = self.transform
                t["tx"] += ev.translation[0]
                t["ty"] += ev.translation[1]
                tf["changed"] = True
        else:
            scale = self.transform["scale"]
            if ev.scale != 1.0:
                pivot_world = self.to_world(ev.pivot)
                self._scale_object(tf["target"], ev.scale, pivot_world)
                tf["changed"] = True
            if ev.translation != (0.0, 0.0):
                self._translate_object(
                    tf["target"],
                    (ev.translation[0] / scale, ev.translation[1] / scale))
                tf["changed"] = True
        return []

    def _end_transform(self) -> list[str]:
        if self._tf is None:
            return ["transform end outside a transform gesture"]
        tf = self._tf
        self._tf = None
        if not tf["changed"]:
            return ["transform ended with no effect"]
        on_object = tf["target"] is not None
        if tf["net_scale"] != 1.0:
            kind = "scale_object" if on_object else "zoom_canvas"
            params = {"factor": tf["net_scale"],
                      "delta": list(tf["net_translation"])}
        else:
            kind = "move_object" if on_object else "pan_canvas"
            params = {"delta": list(tf["net_translation"])}
        if on_object:
            params["index"] = tf["target"]
        self._commit(kind, params, tf["before"])
        return []


def _check_object(obj: dict, where: str) -> dict:
    kind = obj.get("kind")
    if kind == "stroke":
        pts = obj["points"]
        if len(pts) < 2:
            raise ValueError(f"{where}: stroke needs >= 2 points")
        return {"kind": "stroke",
                "points": [[float(p[0]), float(p[1])] for p in pts],
                "color": str(obj["color"]),
                "width": float(obj["width"])}
    if kind == "image":
        rect = obj["rect"]
        if float(rect[2]) <= 0 or float(rect[3]) <= 0:
            raise ValueError(f"{where}: image rect needs positive size")
        return {"kind": "image", "rect": [float(v) for v in rect],
                "resource": str(obj["resource"])}
    raise ValueError(f"{where}: unknown object kind {kind!r}")
