"""Regenerate the golden trace corpus under corpus/.

Every trace is authored here as an explicit parameter set fed through
the synthetic trace builders, so the corpus is reproducible byte for
byte. The manifest records, per trace, the gesture families the engine
must produce and hand-derived expectations about the final document.
Run from the repository root:

    python3 tools/make_corpus.py
"""

from __future__ import annotations

import json
import sys
from pathlib import Path

sys.path.insert(0, str(Path(__file__).resolve().parents[1] / "src"))

from palmboard import synth
from palmboard.document import Document
from palmboard.geometry import centroid, rotate_screen
from palmboard.touch import TouchEvent, TouchTrace, emit_trace

ROOT = Path(__file__).resolve().parents[1]

TRI = [(900.0, 500.0), (960.0, 480.0), (1020.0, 500.0)]
TRI_LOW = [(820.0, 700.0), (880.0, 670.0), (940.0, 700.0)]


def chain(*traces: TouchTrace, gap_ms: int = 200) -> TouchTrace:
    """Concatenate gesture traces on one timeline."""
    events: list[TouchEvent] = []
    shift = 0
    for tr in traces:
        for ev in tr.events:
            events.append(TouchEvent(t=ev.t + shift, id=ev.id, phase=ev.phase,
                                     x=ev.x, y=ev.y))
        shift = events[-1].t + gap_ms
    return TouchTrace(traces[0].width, traces[0].height, events)


def arc_points(a, b, lift, n=12):
    """Quadratic curve from a to b bowing toward lift."""
    cx, cy = (a[0] + b[0]) / 2.0 + lift[0], (a[1] + b[1]) / 2.0 + lift[1]
    pts = []
    for i in range(n + 1):
        t = i / n
        x = (1 - t) ** 2 * a[0] + 2 * (1 - t) * t * cx + t ** 2 * b[0]
        y = (1 - t) ** 2 * a[1] + 2 * (1 - t) * t * cy + t ** 2 * b[1]
        pts.append((round(x, 3), round(y, 3)))
    return pts


def rotate_retreat_trace(contacts, out_deg: float, back_deg: float) -> TouchTrace:
    """Three fingers rotating to out_deg, then retreating to back_deg
    without lifting."""
    c = centroid(contacts)
    b = synth.TraceBuilder()
    for i, p in enumerate(contacts):
        if i:
            b.advance(4)
        b.down(i, p)
    b.advance(synth.HOLD_MS - 4 * (len(contacts) - 1))
    angles = [out_deg * s / 20 for s in range(1, 21)]
    angles += [out_deg + (back_deg - out_deg) * s / 10 for s in range(1, 11)]
    for a in angles:
        for i, p in enumerate(contacts):
            rel = (p[0] - c[0], p[1] - c[1])
            q = rotate_screen(rel, a)
            b.move(i, (c[0] + q[0], c[1] + q[1]))
        b.advance(synth.FRAME_MS)
    for i, p in enumerate(contacts):
        rel = (p[0] - c[0], p[1] - c[1])
        q = rotate_screen(rel, back_deg)
        b.up(i, (c[0] + q[0], c[1] + q[1]))
    return b.build()


def strokes(n: int) -> TouchTrace:
    """n short separated strokes, each one command."""
    parts = [synth.stroke_trace([(80.0 + 90.0 * i, 120.0),
                                 (140.0 + 90.0 * i, 200.0)]) for i in range(n)]
    return chain(*parts)


def build(corpus: Path) -> dict:
    entries = []

    def add(name: str, trace: TouchTrace, families: list[str],
            expect: dict, doc: str | None = None) -> None:
        (corpus / name).write_bytes(emit_trace(trace).encode())
        entry = {"file": name, "families": families, "expect": expect}
        if doc:
            entry["doc"] = doc
        entries.append(entry)

    # ------------------------------------------------------------ docs
    deck = Document(slides=3)
    deck.next_slide()                      # opens on slide index 1
    (corpus / "deck3.json").write_bytes(deck.serialize().encode())

    board = Document()
    board.add_image((860.0, 460.0, 200.0, 160.0), "panel")
    (corpus / "board_object.json").write_bytes(board.serialize().encode())

    content = Document()
    content.add_image((100.0, 100.0, 400.0, 300.0), "figure")
    (corpus / "board_content.json").write_bytes(content.serialize().encode())

    # --------------------------------------------------------- strokes
    add("stroke_line.jsonl",
        synth.stroke_trace([(100.0, 100.0), (300.0, 200.0)]),
        ["stroke"],
        {"objects": 1, "stroke0_first": [100.0, 100.0],
         "stroke0_last": [300.0, 200.0]})
    add("stroke_arc.jsonl",
        synth.stroke_trace(arc_points((200.0, 600.0), (700.0, 600.0),
                                      (0.0, -180.0))),
        ["stroke"], {"objects": 1})
    add("stroke_zigzag.jsonl",
        synth.stroke_trace([(100.0, 300.0), (220.0, 180.0), (340.0, 300.0),
                            (460.0, 180.0), (580.0, 300.0)]),
        ["stroke"], {"objects": 1})
    add("stroke_diagonal.jsonl",
        synth.stroke_trace([(150.0, 900.0), (1700.0, 150.0)]),
        ["stroke"],
        {"objects": 1, "stroke0_first": [150.0, 900.0],
         "stroke0_last": [1700.0, 150.0]})
    add("stroke_long.jsonl",
        synth.stroke_trace([(100.0 + 55.0 * i,
                             500.0 + (80.0 if i % 2 else -80.0))
                            for i in range(30)]),
        ["stroke"], {"objects": 1})
    add("stroke_dot.jsonl",
        synth.tap_trace((640.0, 360.0)),
        ["stroke"],
        {"objects": 1, "stroke0_first": [640.0, 360.0],
         "stroke0_last": [640.0, 360.0]})

    # -------------------------------------------------------------- pan
    add("pan_right.jsonl",
        synth.pan_trace((600.0, 400.0), (700.0, 400.0), (50.0, 0.0)),
        ["pan"], {"canvas_tx": 50.0, "canvas_ty": 0.0, "canvas_scale": 1.0})
    add("pan_up.jsonl",
        synth.pan_trace((500.0, 700.0), (620.0, 700.0), (0.0, -80.0)),
        ["pan"], {"canvas_tx": 0.0, "canvas_ty": -80.0, "canvas_scale": 1.0})
    add("pan_diagonal.jsonl",
        synth.pan_trace((300.0, 300.0), (420.0, 330.0), (60.0, -30.0)),
        ["pan"], {"canvas_tx": 60.0, "canvas_ty": -30.0, "canvas_scale": 1.0})
    add("pan_short.jsonl",
        synth.pan_trace((800.0, 500.0), (900.0, 500.0), (15.0, 0.0)),
        ["pan"], {"canvas_tx": 15.0, "canvas_ty": 0.0, "canvas_scale": 1.0})
    add("pan_object.jsonl",
        synth.pan_trace((910.0, 540.0), (1010.0, 540.0), (60.0, -30.0)),
        ["pan"],
        {"objects": 1, "rect0": [920.0, 430.0, 200.0, 160.0],
         "canvas_tx": 0.0},
        doc="board_object.json")

    # ------------------------------------------------------------- zoom
    add("zoom_in.jsonl",
        synth.zoom_trace((960.0, 540.0), (120.0, 0.0), 1.6),
        ["zoom"], {"canvas_scale": 1.6})
    add("zoom_out.jsonl",
        synth.zoom_trace((700.0, 400.0), (90.0, 0.0), 0.55),
        ["zoom"], {"canvas_scale": 0.55})
    add("zoom_vertical.jsonl",
        synth.zoom_trace((400.0, 500.0), (0.0, 70.0), 1.4),
        ["zoom"], {"canvas_scale": 1.4})
    add("zoom_strong.jsonl",
        synth.zoom_trace((1200.0, 600.0), (90.0, 0.0), 2.5, steps=24),
        ["zoom"], {"canvas_scale": 2.5})
    add("zoom_object.jsonl",
        synth.zoom_trace((960.0, 540.0), (110.0, 0.0), 1.6),
        ["zoom"],
        {"objects": 1, "rect0_w": 320.0, "rect0_h": 256.0,
         "canvas_scale": 1.0},
        doc="board_object.json")

    # ----------------------------------------------------------- rotate
    # step = 30 degrees; synthesized rotations undershoot the nominal
    # angle by under a degree, so targets sit mid-step
    add("rotate_undo_35.jsonl",
        chain(strokes(1), synth.rotate_trace(TRI, 35.0)),
        ["stroke", "rotate"], {"objects": 0})
    add("rotate_undo_75.jsonl",
        chain(strokes(2), synth.rotate_trace(TRI, 75.0)),
        ["stroke", "stroke", "rotate"], {"objects": 0})
    add("rotate_redo.jsonl",
        chain(strokes(1), synth.rotate_trace(TRI, 35.0),
              synth.rotate_trace(TRI_LOW, -34.0)),
        ["stroke", "rotate", "rotate"], {"objects": 1})
    add("rotate_retreat.jsonl",
        chain(strokes(2), rotate_retreat_trace(TRI, 40.0, 20.0)),
        ["stroke", "stroke", "rotate"], {"objects": 2})
    add("rotate_big.jsonl",
        chain(strokes(5), synth.rotate_trace(TRI, 130.0)),
        ["stroke"] * 5 + ["rotate"], {"objects": 1})

    # ------------------------------------------------------- menu swipe
    add("menu_back.jsonl",
        synth.menu_swipe_trace(TRI, 180.0, 60.0),
        ["menu_swipe"], {"slide": 0}, doc="deck3.json")
    add("menu_back_low.jsonl",
        synth.menu_swipe_trace(TRI_LOW, 180.0, 75.0),
        ["menu_swipe"], {"slide": 0}, doc="deck3.json")
    add("menu_next.jsonl",
        synth.menu_swipe_trace(TRI, 0.0, 60.0),
        ["menu_swipe"], {"slide": 2}, doc="deck3.json")
    add("menu_overview.jsonl",
        synth.menu_swipe_trace(TRI, 90.0, 55.0),
        ["menu_swipe"],
        # fit 400x300 at (100,100) into 1920x1080 with a 5% margin:
        # scale = 0.9*1080/300, anchor at the content center
        {"canvas_scale": 3.24, "canvas_tx": -12.0, "canvas_ty": -270.0},
        doc="board_content.json")
    add("menu_copy.jsonl",
        chain(synth.pan_trace((910.0, 540.0), (1010.0, 540.0), (60.0, -30.0)),
              synth.menu_swipe_trace(TRI_LOW, 270.0, 60.0)),
        ["pan", "menu_swipe"],
        {"objects": 2, "rect1": [940.0, 450.0, 200.0, 160.0]},
        doc="board_object.json")

    # ------------------------------------------------ extra: menu cancel
    add("menu_tap_cancel.jsonl",
        synth.menu_tap_trace(TRI),
        ["menu_cancel"], {"objects": 0, "slide": 0})

    return {"version": 1, "traces": entries}


def main(out_dir: str | None = None) -> None:
    corpus = Path(out_dir) if out_dir else ROOT / "corpus"
    corpus.mkdir(parents=True, exist_ok=True)
    manifest = build(corpus)
    (corpus / "manifest.json").write_bytes(
        (json.dumps(manifest, indent=2, sort_keys=True) + "\n").encode())
    (corpus / "exp1_observed.csv").write_bytes(
        b"n_items,rate\n2,0.996\n4,0.983\n8,0.959\n16,0.738\n")
    print(f"wrote {len(manifest['traces'])} traces to {corpus}")


if __name__ == "__main__":
    main(sys.argv[1] if len(sys.argv) > 1 else None)
