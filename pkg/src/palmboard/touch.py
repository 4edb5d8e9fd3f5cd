"""Touch event model, stream legality, and the canonical trace format.

A trace file is line-delimited JSON with LF endings:

    {"w":1920,"h":1080,"v":1}
    {"t":0,"id":0,"ph":"d","x":100.0,"y":200.0}
    {"t":16,"id":0,"ph":"m","x":112.0,"y":204.0}
    {"t":32,"id":0,"ph":"u","x":112.0,"y":204.0}

Line 1 is the header (viewport width/height in px, format version 1).
Every following line is one event with keys in exactly that order:
t = milliseconds (integer, non-decreasing), id = contact id, ph = phase
("d" down, "m" move, "u" up), x/y = screen px. Emission is canonical:
no extra whitespace, coordinates always JSON floats, so re-emitting a
parsed canonical trace reproduces it byte for byte.

Stream legality, enforced incrementally: a contact id must be down
before it moves or lifts, may not go down twice, timestamps never
decrease, and coordinates are finite.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, field
from enum import Enum


class Phase(Enum):
    DOWN = "d"
    MOVE = "m"
    UP = "u"


class TraceFormatError(ValueError):
    """Raised when trace text does not match the documented format."""


class StreamError(ValueError):
    """Raised when an event violates stream legality."""


@dataclass(frozen=True)
class TouchEvent:
    t: int
    id: int
    phase: Phase
    x: float
    y: float

    @property
    def pos(self) -> tuple[float, float]:
        return (self.x, self.y)


@dataclass
class TouchTrace:
    width: int
    height: int
    events: list[TouchEvent] = field(default_factory=list)
    version: int = 1


@dataclass(frozen=True)
class Violation:
    """One invariant violation, addressed by 0-based event index."""
    index: int
    reason: str

    def __str__(self) -> str:
        return f"event {self.index}: {self.reason}"


class StreamValidator:
    """Incremental legality checker. feed() raises before any state changes."""

    def __init__(self) -> None:
        self._down: dict[int, tuple[float, float]] = {}
        self._last_t: int | None = None

    @property
    def down_ids(self) -> list[int]:
        return list(self._down)

    def position(self, cid: int) -> tuple[float, float]:
        return self._down[cid]

    def feed(self, ev: TouchEvent) -> None:
        if not (math.isfinite(ev.x) and math.isfinite(ev.y)):
            raise StreamError(f"t={ev.t} id={ev.id}: non-finite coordinates")
        if self._last_t is not None and ev.t < self._last_t:
            raise StreamError(f"t={ev.t}: timestamp decreases (last was {self._last_t})")
        if ev.phase is Phase.DOWN:
            if ev.id in self._down:
                raise StreamError(f"t={ev.t} id={ev.id}: down while already down")
        else:
            if ev.id not in self._down:
                raise StreamError(f"t={ev.t} id={ev.id}: {ev.phase.value!r} on a contact that is not down")
        # checks passed, commit
        self._last_t = ev.t
        if ev.phase is Phase.UP:
            del self._down[ev.id]
        else:
            self._down[ev.id] = (ev.x, ev.y)


def validate_stream(events: list[TouchEvent]) -> list[Violation]:
    """Collect every stream-legality violation; empty means replayable.

    Violations are data, not errors: callers that want an exception use
    StreamValidator.feed directly. An offending event is not committed,
    so follow-on violations are judged against the last legal state.
    """
    v = StreamValidator()
    out: list[Violation] = []
    for i, ev in enumerate(events):
        try:
            v.feed(ev)
        except StreamError as e:
            out.append(Violation(i, str(e)))
    return out


def validate_trace(trace: TouchTrace) -> list[Violation]:
    """Stream violations plus trace-level bounds checks (coordinates must
    lie within [0, width] x [0, height])."""
    out = validate_stream(trace.events)
    for i, ev in enumerate(trace.events):
        if not (0.0 <= ev.x <= trace.width and 0.0 <= ev.y <= trace.height):
            out.append(Violation(
                i, f"t={ev.t} id={ev.id}: ({ev.x:g},{ev.y:g}) outside "
                   f"[0,{trace.width}]x[0,{trace.height}]"))
    return sorted(out, key=lambda v: v.index)


_HEADER_KEYS = ["w", "h", "v"]
_EVENT_KEYS = ["t", "id", "ph", "x", "y"]
_PHASES = {p.value: p for p in Phase}


def _parse_line(line: str, lineno: int, keys: list[str]) -> dict:
    try:
        obj = json.loads(line)
    except json.JSONDecodeError as e:
        raise TraceFormatError(f"line {lineno}: invalid JSON ({e.msg})") from None
    if not isinstance(obj, dict) or sorted(obj) != sorted(keys):
        raise TraceFormatError(f"line {lineno}: expected keys {keys}")
    return obj


def _require_int(obj: dict, key: str, lineno: int) -> int:
    v = obj[key]
    if isinstance(v, bool) or not isinstance(v, int):
        raise TraceFormatError(f"line {lineno}: {key!r} must be an integer")
    return v


def parse_trace(text: str, validate: bool = True) -> TouchTrace:
    """Parse trace text. With validate=True also enforces stream legality."""
    lines = text.split("\n")
    if lines and lines[-1] == "":
        lines.pop()
    if not lines:
        raise TraceFormatError("empty trace")
    header = _parse_line(lines[0], 1, _HEADER_KEYS)
    w = _require_int(header, "w", 1)
    h = _require_int(header, "h", 1)
    ver = _require_int(header, "v", 1)
    if ver != 1:
        raise TraceFormatError(f"unsupported trace version {ver}")
    if w <= 0 or h <= 0:
        raise TraceFormatError("viewport dimensions must be positive")
    events = []
    for i, line in enumerate(lines[1:], start=2):
        obj = _parse_line(line, i, _EVENT_KEYS)
        t = _require_int(obj, "t", i)
        cid = _require_int(obj, "id", i)
        ph = obj["ph"]
        if ph not in _PHASES:
            raise TraceFormatError(f"line {i}: 'ph' must be one of d/m/u")
        x, y = obj["x"], obj["y"]
        for name, v in (("x", x), ("y", y)):
            if isinstance(v, bool) or not isinstance(v, (int, float)):
                raise TraceFormatError(f"line {i}: {name!r} must be a number")
        events.append(TouchEvent(t, cid, _PHASES[ph], float(x), float(y)))
    trace = TouchTrace(w, h, events)
    if validate:
        violations = validate_trace(trace)
        if violations:
            raise StreamError(str(violations[0]))
    return trace


def emit_trace(trace: TouchTrace) -> str:
    """Serialize to the canonical byte form (LF endings, fixed key order)."""
    out = [json.dumps({"w": trace.width, "h": trace.height, "v": trace.version},
                      separators=(",", ":"))]
    for ev in trace.events:
        out.append(json.dumps(
            {"t": ev.t, "id": ev.id, "ph": ev.phase.value, "x": float(ev.x), "y": float(ev.y)},
            separators=(",", ":")))
    return "\n".join(out) + "\n"


def load_trace(path: str, validate: bool = True) -> TouchTrace:
    with open(path, encoding="utf-8", newline="") as f:
        return parse_trace(f.read(), validate=validate)


def save_trace(trace: TouchTrace, path: str) -> None:
    with open(path, "w", encoding="utf-8", newline="") as f:
        f.write(emit_trace(trace))


def scan_trace(text: str) -> list[str]:
    """Collect human-readable format/stream violations for reporting.

    Unlike parse_trace this does not stop at the first problem with the
    stream; format problems still end the scan since later lines cannot
    be trusted. Lines prefixed "note:" are advisories (a legal stream
    may still end mid-gesture), not violations.
    """
    try:
        trace = parse_trace(text, validate=False)
    except TraceFormatError as e:
        return [str(e)]
    problems = [f"line {v.index + 2}: {v.reason}" for v in validate_trace(trace)]
    # replay the phase bookkeeping cheaply to find dangling contacts
    still_down: set[int] = set()
    for ev in trace.events:
        if ev.phase is Phase.DOWN:
            still_down.add(ev.id)
        elif ev.phase is Phase.UP:
            still_down.discard(ev.id)
    if still_down:
        problems.append(f"note: contacts still down at end of trace: {sorted(still_down)}")
    return problems
