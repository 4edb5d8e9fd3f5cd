"""Shared helpers: deterministic synthetic touch streams for property tests."""

from __future__ import annotations

import random

from palmboard.gestures import (
    MenuCancelled, MenuPreview, MenuSelected, MenuShown, RedoStep, StrokeBegin,
    StrokeEnd, StrokePoint, TransformBegin, TransformDelta, TransformEnd,
    UndoStep,
)
from palmboard.touch import Phase, TouchEvent


def check_bracketing(events) -> list[str]:
    """Validate gesture-event bracketing and family exclusivity.

    Outside a bracket only opening events and undo/redo steps may occur;
    inside a bracket only that family's events may occur until its close.
    Returns human-readable problems (empty = well formed).
    """
    problems: list[str] = []
    state = "idle"
    for i, ev in enumerate(events):
        kind = type(ev).__name__
        if state == "idle":
            if isinstance(ev, StrokeBegin):
                state = "stroke"
            elif isinstance(ev, TransformBegin):
                state = "transform"
            elif isinstance(ev, MenuShown):
                state = "menu"
            elif isinstance(ev, (UndoStep, RedoStep)):
                pass
            else:
                problems.append(f"{i}: {kind} outside any gesture")
        elif state == "stroke":
            if isinstance(ev, StrokeEnd):
                state = "idle"
            elif not isinstance(ev, StrokePoint):
                problems.append(f"{i}: {kind} inside a stroke")
                state = "idle"
        elif state == "transform":
            if isinstance(ev, TransformEnd):
                state = "idle"
            elif not isinstance(ev, TransformDelta):
                problems.append(f"{i}: {kind} inside a transform")
                state = "idle"
        elif state == "menu":
            if isinstance(ev, (MenuSelected, MenuCancelled)):
                state = "idle"
            elif not isinstance(ev, MenuPreview):
                problems.append(f"{i}: {kind} inside a menu gesture")
                state = "idle"
    if state != "idle":
        problems.append(f"end: unclosed {state} gesture")
    return problems


def random_legal_events(rng: random.Random, n: int,
                        width: int = 1920, height: int = 1080) -> list[TouchEvent]:
    """A legal stream of n events: ids go down/move/up in a valid order,
    timestamps never decrease, coordinates stay finite."""
    events: list[TouchEvent] = []
    down: dict[int, tuple[float, float]] = {}
    next_id = 0
    t = 0
    for _ in range(n):
        t += rng.randrange(0, 25)
        choices = ["down"] if not down else ["down", "move", "move", "up"]
        if len(down) >= 10:
            choices = ["move", "move", "up"]
        kind = rng.choice(choices)
        if kind == "down":
            cid = next_id
            next_id += 1
            pos = (rng.uniform(0, width), rng.uniform(0, height))
            down[cid] = pos
            events.append(TouchEvent(t, cid, Phase.DOWN, pos[0], pos[1]))
        elif kind == "move":
            cid = rng.choice(sorted(down))
            x, y = down[cid]
            pos = (min(max(x + rng.uniform(-30, 30), 0.0), float(width)),
                   min(max(y + rng.uniform(-30, 30), 0.0), float(height)))
            down[cid] = pos
            events.append(TouchEvent(t, cid, Phase.MOVE, pos[0], pos[1]))
        else:
            cid = rng.choice(sorted(down))
            x, y = down.pop(cid)
            events.append(TouchEvent(t, cid, Phase.UP, x, y))
    # close out whatever is still down so traces replay to completion
    for cid in sorted(down):
        t += rng.randrange(0, 25)
        x, y = down[cid]
        events.append(TouchEvent(t, cid, Phase.UP, x, y))
    return events
