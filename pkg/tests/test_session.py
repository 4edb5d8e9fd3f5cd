"""Session message handling, role policy, and replay."""

from __future__ import annotations

import json
import random

import pytest

from palmboard.document import Document
from palmboard.gestures import EngineConfig
from palmboard.session import (
    AUDIENCE, PRESENTER, Diagnostic, MenuState, ReplayError, Scene, Session,
    decode_message, encode_update, replay,
)
from palmboard.touch import StreamError, TouchTrace
from palmboard import synth

from conftest import random_legal_events


def touch_msg(ev) -> dict:
    return {"type": "touch",
            "event": {"t": ev.t, "id": ev.id, "ph": ev.phase.value,
                      "x": ev.x, "y": ev.y}}


def feed(session: Session, trace) -> dict[str, list]:
    got = {PRESENTER: [], AUDIENCE: []}
    for ev in trace.events:
        updates = session.handle_message(touch_msg(ev))
        for role in got:
            got[role].extend(updates.get(role, []))
    return got


def test_stroke_reaches_both_roles():
    session = Session()
    got = feed(session, synth.stroke_trace([(100.0, 100.0), (300.0, 200.0)]))
    pres_scenes = [u for u in got[PRESENTER] if isinstance(u, Scene)]
    aud_scenes = [u for u in got[AUDIENCE] if isinstance(u, Scene)]
    assert pres_scenes and aud_scenes
    assert pres_scenes[-1].doc["slides"][0]["objects"][0]["kind"] == "stroke"
    assert pres_scenes[-1] == aud_scenes[-1]


def test_menu_show_goes_to_presenter_only():
    session = Session()
    contacts = [(900.0, 500.0), (960.0, 480.0), (1020.0, 500.0)]
    got = feed(session, synth.menu_tap_trace(contacts))
    menus = [u for u in got[PRESENTER] if isinstance(u, MenuState)]
    assert [m.visible for m in menus] == [True, False]
    assert menus[0].geometry is not None
    assert got[AUDIENCE] == []  # nothing changed, nothing leaked


def test_menu_swipe_updates_highlight_then_hides():
    session = Session(document=Document(slides=3))
    session.doc.next_slide()
    contacts = [(900.0, 500.0), (960.0, 480.0), (1020.0, 500.0)]
    got = feed(session, synth.menu_swipe_trace(contacts, 180.0, 60.0))
    menus = [u for u in got[PRESENTER] if isinstance(u, MenuState)]
    assert menus[0].visible and menus[0].highlighted is None
    assert any(m.visible and m.highlighted == 0 for m in menus)
    assert not menus[-1].visible
    aud_scenes = [u for u in got[AUDIENCE] if isinstance(u, Scene)]
    assert aud_scenes[-1].slide == 0  # Back selected


def test_audience_stream_never_contains_menu_frames():
    rng = random.Random(41)
    for _ in range(15):
        session = Session()
        events = random_legal_events(rng, rng.randint(10, 120), 1920, 1080)
        for ev in events:
            updates = session.handle_message(touch_msg(ev))
            for u in updates[AUDIENCE]:
                assert isinstance(u, Scene)
                assert "menu" not in encode_update(u)[:40]


def test_malformed_messages_leave_session_unchanged():
    session = Session()
    before = session.doc.serialize()
    cases = [
        {"type": "warp"},
        {"type": "touch"},
        {"type": "touch", "event": {"t": 0.5, "id": 0, "ph": "d", "x": 1, "y": 1}},
        {"type": "touch", "event": {"t": 0, "id": 0, "ph": "q", "x": 1, "y": 1}},
        {"type": "touch", "event": {"t": 0, "id": 0, "ph": "d", "x": float("nan"),
                                    "y": 1}},
        {"type": "load_document", "text": "{broken"},
        {"type": "set_config", "config": {"settle_window": -5}},
        {"type": "view_request", "role": "director"},
    ]
    for msg in cases:
        updates = session.handle_message(msg)
        assert updates[AUDIENCE] == []
        assert len(updates[PRESENTER]) == 1
        assert isinstance(updates[PRESENTER][0], Diagnostic), msg
    assert session.doc.serialize() == before


def test_stream_violation_is_diagnostic_and_engine_survives():
    session = Session()
    bad = {"type": "touch", "event": {"t": 0, "id": 7, "ph": "m",
                                      "x": 10.0, "y": 10.0}}
    updates = session.handle_message(bad)
    assert isinstance(updates[PRESENTER][0], Diagnostic)
    got = feed(session, synth.stroke_trace([(100.0, 100.0), (300.0, 200.0)]))
    assert any(isinstance(u, Scene) for u in got[AUDIENCE])


def test_set_config_applies_and_resets_menu():
    session = Session()
    config = EngineConfig(settle_window=120)
    updates = session.handle_message({"type": "set_config",
                                      "config": config.to_dict()})
    texts = [u.text for u in updates[PRESENTER] if isinstance(u, Diagnostic)]
    assert "config updated" in texts
    assert session.config.settle_window == 120
    assert isinstance(updates[PRESENTER][-1], MenuState)
    assert not updates[PRESENTER][-1].visible


def test_load_document_broadcasts_scene():
    session = Session()
    doc = Document(slides=3)
    doc.next_slide()
    updates = session.handle_message({"type": "load_document",
                                      "text": doc.serialize()})
    for role in (PRESENTER, AUDIENCE):
        assert isinstance(updates[role][0], Scene)
        assert updates[role][0].slide == 1


def test_view_request_snapshots_by_role():
    session = Session()
    pres = session.handle_message({"type": "view_request", "role": PRESENTER})
    assert isinstance(pres[PRESENTER][0], Scene)
    assert isinstance(pres[PRESENTER][1], MenuState)
    assert pres[AUDIENCE] == []
    aud = session.handle_message({"type": "view_request", "role": AUDIENCE})
    assert [type(u) for u in aud[AUDIENCE]] == [Scene]
    assert aud[PRESENTER] == []


def test_menustate_invariant_rejects_hidden_geometry():
    with pytest.raises(ValueError):
        MenuState(visible=False, geometry={"radius": 60})
    with pytest.raises(ValueError):
        MenuState(visible=False, highlighted=2)


def test_frame_encoding_shapes():
    scene = Scene(doc={"a": 1}, transform={"scale": 1.0, "tx": 0.0, "ty": 0.0},
                  slide=0)
    frame = json.loads(encode_update(scene))
    assert frame["type"] == "scene" and frame["slide"] == 0
    hidden = json.loads(encode_update(MenuState(False)))
    assert hidden == {"type": "menu", "visible": False}
    shown = json.loads(encode_update(MenuState(True, {"radius": 60}, 2)))
    assert shown["geometry"] == {"radius": 60} and shown["highlighted"] == 2
    diag = json.loads(encode_update(Diagnostic("x")))
    assert diag == {"type": "diagnostic", "text": "x"}


def test_decode_message_rejects_bad_frames():
    with pytest.raises(StreamError):
        decode_message("{nope")
    with pytest.raises(StreamError):
        decode_message('[1,2]')
    with pytest.raises(StreamError):
        decode_message('{"type": 4}')
    assert decode_message('{"type":"touch"}') == {"type": "touch"}


def test_replay_empty_trace_yields_initial_doc():
    out = replay(TouchTrace(1920, 1080, []))
    assert out == Document().serialize()


def test_replay_is_deterministic():
    trace = synth.zoom_trace((800.0, 450.0), (100.0, 0.0), 1.5)
    assert replay(trace) == replay(trace)


def test_replay_rejects_invalid_trace_before_running():
    from palmboard.touch import Phase, TouchEvent
    trace = TouchTrace(1920, 1080, [
        TouchEvent(0, 0, Phase.MOVE, 10.0, 10.0),
    ])
    with pytest.raises(ReplayError) as e:
        replay(trace)
    assert e.value.violations


def test_replay_with_initial_document():
    doc = Document(slides=3)
    doc.next_slide()
    contacts = [(900.0, 500.0), (960.0, 480.0), (1020.0, 500.0)]
    trace = synth.menu_swipe_trace(contacts, 180.0, 60.0)
    out = replay(trace, initial=doc.serialize())
    assert json.loads(out)["current_slide"] == 0


def test_live_and_replay_agree_on_random_streams():
    rng = random.Random(97)
    for _ in range(12):
        events = random_legal_events(rng, rng.randint(20, 150), 1920, 1080)
        trace = TouchTrace(1920, 1080, events)
        session = Session()
        for ev in events:
            session.handle_message(touch_msg(ev))
        assert session.doc.serialize() == replay(trace)


def test_live_and_replay_agree_on_synth_gestures():
    traces = [
        synth.stroke_trace([(120.0, 140.0), (260.0, 220.0)]),
        synth.pan_trace((600.0, 400.0), (700.0, 400.0), (40.0, 10.0)),
        synth.rotate_trace([(900.0, 500.0), (960.0, 470.0), (1020.0, 500.0)], 40.0),
    ]
    session = Session()
    merged = []
    shift = 0
    for tr in traces:
        for ev in tr.events:
            merged.append(type(ev)(t=ev.t + shift, id=ev.id, phase=ev.phase,
                                   x=ev.x, y=ev.y))
        shift = merged[-1].t + 200
    for ev in merged:
        session.handle_message(touch_msg(ev))
    assert session.doc.serialize() == replay(TouchTrace(1920, 1080, merged))
