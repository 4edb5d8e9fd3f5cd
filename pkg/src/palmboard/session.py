"""Live session plumbing: inbound messages, per-role render updates,
trace replay.

A session owns one gesture engine and one document. Inbound messages
are JSON objects with a "type" discriminator; handle_message returns
the render updates each subscriber role should receive. Menu state
goes to the presenter only: the audience stream never carries a menu
frame at all, which makes the hiding a protocol property rather than
a rendering detail.

Wire frames (one JSON text frame per message):

  inbound   {"type": "touch", "event": {"t", "id", "ph", "x", "y"}}
            {"type": "set_config", "config": {... EngineConfig dict ...}}
            {"type": "load_document", "text": "<document serialization>"}
            {"type": "view_request", "role": "presenter" | "audience"}

  outbound  {"type": "scene", "doc": {...}, "transform": {...}, "slide": n}
            {"type": "menu", "visible": bool[, "geometry": {...}]
                             [, "highlighted": n]}
            {"type": "diagnostic", "text": "..."}
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass

from .document import Document, DocumentFormatError
from .gestures import (
    EngineConfig, GestureEngine, MenuCancelled, MenuPreview, MenuSelected,
    MenuShown,
)
from .touch import Phase, StreamError, TouchEvent, TouchTrace, validate_trace

PRESENTER = "presenter"
AUDIENCE = "audience"
ROLES = (PRESENTER, AUDIENCE)


class ReplayError(ValueError):
    """Raised when a trace fails validation before replay starts."""

    def __init__(self, violations):
        self.violations = list(violations)
        lines = "; ".join(str(v) for v in self.violations[:5])
        more = len(self.violations) - 5
        if more > 0:
            lines += f"; and {more} more"
        super().__init__(lines)


@dataclass(frozen=True)
class Scene:
    doc: dict
    transform: dict
    slide: int

    def to_frame(self) -> dict:
        return {"type": "scene", "doc": self.doc, "transform": self.transform,
                "slide": self.slide}


@dataclass(frozen=True)
class MenuState:
    visible: bool
    geometry: dict | None = None
    highlighted: int | None = None

    def __post_init__(self):
        if not self.visible and (self.geometry is not None
                                 or self.highlighted is not None):
            raise ValueError("a hidden menu carries no geometry or highlight")

    def to_frame(self) -> dict:
        frame: dict = {"type": "menu", "visible": self.visible}
        if self.visible:
            frame["geometry"] = self.geometry
            frame["highlighted"] = self.highlighted
        return frame


@dataclass(frozen=True)
class Diagnostic:
    text: str

    def to_frame(self) -> dict:
        return {"type": "diagnostic", "text": self.text}


RenderUpdate = Scene | MenuState | Diagnostic


def encode_update(update: RenderUpdate) -> str:
    return json.dumps(update.to_frame(), sort_keys=True, separators=(",", ":"))


def decode_message(text: str) -> dict:
    try:
        msg = json.loads(text)
    except json.JSONDecodeError as e:
        raise StreamError(f"bad frame: {e.msg}") from None
    if not isinstance(msg, dict) or not isinstance(msg.get("type"), str):
        raise StreamError("bad frame: expected an object with a string 'type'")
    return msg


class Session:
    """One presenter, any number of audience subscribers, one document."""

    def __init__(self, config: EngineConfig | None = None,
                 document: Document | None = None):
        self.config = config or EngineConfig()
        self.engine = GestureEngine(self.config)
        self.doc = document if document is not None else Document()
        self.menu = MenuState(visible=False)

    # ------------------------------------------------------------ views

    def scene(self) -> Scene:
        t = self.doc.transform
        return Scene(doc=self.doc.content_state(), transform=dict(t),
                     slide=self.doc.current_slide)

    # -------------------------------------------------------- messaging

    def handle_message(self, msg: dict) -> dict[str, list[RenderUpdate]]:
        """Process one inbound message; returns updates per role. A
        malformed message yields a presenter Diagnostic and leaves the
        session unchanged."""
        kind = msg.get("type")
        if kind == "touch":
            return self._on_touch(msg)
        if kind == "set_config":
            return self._on_set_config(msg)
        if kind == "load_document":
            return self._on_load_document(msg)
        if kind == "view_request":
            return self._on_view_request(msg)
        return self._fail(f"unknown message type {kind!r}")

    @staticmethod
    def _fail(text: str) -> dict[str, list[RenderUpdate]]:
        return {PRESENTER: [Diagnostic(text)], AUDIENCE: []}

    def _on_touch(self, msg: dict) -> dict[str, list[RenderUpdate]]:
        try:
            ev = _parse_touch(msg.get("event"))
        except ValueError as e:
            return self._fail(f"bad touch event: {e}")
        before = self.doc.serialize()
        try:
            outputs = self.engine.process(ev)
        except StreamError as e:
            return self._fail(f"touch stream violation: {e}")
        presenter: list[RenderUpdate] = []
        audience: list[RenderUpdate] = []
        for out in outputs:
            if isinstance(out, MenuShown):
                self.menu = MenuState(True, out.geometry.to_dict(), None)
                presenter.append(self.menu)
            elif isinstance(out, MenuPreview):
                self.menu = MenuState(True, self.menu.geometry, out.highlighted)
                presenter.append(self.menu)
            elif isinstance(out, (MenuSelected, MenuCancelled)):
                self.menu = MenuState(False)
                presenter.append(self.menu)
            if isinstance(out, (MenuShown, MenuPreview, MenuCancelled)):
                continue
            for text in self.doc.apply_gesture(out, menu=self.config.menu):
                presenter.append(Diagnostic(text))
        if self.doc.serialize() != before:
            scene = self.scene()
            presenter.append(scene)
            audience.append(scene)
        return {PRESENTER: presenter, AUDIENCE: audience}

    def _on_set_config(self, msg: dict) -> dict[str, list[RenderUpdate]]:
        try:
            config = EngineConfig.from_dict(msg["config"])
            warnings = config.validate()
        except (KeyError, TypeError, ValueError) as e:
            return self._fail(f"bad config: {e}")
        self.config = config
        self.engine = GestureEngine(config)
        self.doc.cancel_gesture()
        self.menu = MenuState(visible=False)
        updates: list[RenderUpdate] = [Diagnostic("config updated")]
        updates += [Diagnostic(f"config warning: {w}") for w in warnings]
        updates.append(self.menu)
        return {PRESENTER: updates, AUDIENCE: []}

    def _on_load_document(self, msg: dict) -> dict[str, list[RenderUpdate]]:
        text = msg.get("text")
        if not isinstance(text, str):
            return self._fail("load_document needs a string 'text'")
        try:
            doc = Document.deserialize(text)
        except DocumentFormatError as e:
            return self._fail(f"bad document: {e}")
        self.doc = doc
        self.engine.reset()
        self.menu = MenuState(visible=False)
        scene = self.scene()
        return {PRESENTER: [scene], AUDIENCE: [scene]}

    def _on_view_request(self, msg: dict) -> dict[str, list[RenderUpdate]]:
        role = msg.get("role")
        if role not in ROLES:
            return self._fail(f"unknown role {role!r}")
        updates: list[RenderUpdate] = [self.scene()]
        if role == PRESENTER:
            updates.append(self.menu)
        return {role: updates, **{r: [] for r in ROLES if r != role}}


def _parse_touch(event) -> TouchEvent:
    if not isinstance(event, dict):
        raise ValueError("missing event object")
    try:
        t, cid, ph = event["t"], event["id"], event["ph"]
        x, y = event["x"], event["y"]
    except KeyError as e:
        raise ValueError(f"missing field {e.args[0]!r}") from None
    if isinstance(t, bool) or not isinstance(t, int):
        raise ValueError("t must be an integer")
    if isinstance(cid, bool) or not isinstance(cid, int):
        raise ValueError("id must be an integer")
    try:
        phase = Phase(ph)
    except ValueError:
        raise ValueError(f"bad phase {ph!r}") from None
    for name, v in (("x", x), ("y", y)):
        if isinstance(v, bool) or not isinstance(v, (int, float)) \
                or not math.isfinite(v):
            raise ValueError(f"{name} must be a finite number")
    return TouchEvent(t=t, id=cid, phase=phase, x=float(x), y=float(y))


def replay(trace: TouchTrace, config: EngineConfig | None = None,
           initial: str | None = None) -> str:
    """Run a whole validated trace against a fresh engine and document;
    returns the final document serialization. Pure in (trace, config,
    initial): no wall clock, no shared state. An invalid trace raises
    ReplayError before anything runs."""
    violations = validate_trace(trace)
    if violations:
        raise ReplayError(violations)
    config = config or EngineConfig()
    engine = GestureEngine(config)
    doc = Document.deserialize(initial) if initial is not None else Document()
    for ev in trace.events:
        for out in engine.process(ev):
            doc.apply_gesture(out, menu=config.menu)
    return doc.serialize()
