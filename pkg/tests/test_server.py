"""End-to-end socket tests: two roles connected to one live session."""

from __future__ import annotations

import asyncio
import json

from websockets.asyncio.client import connect

from palmboard import synth
from palmboard.server import bound_port, serve


def touch_frames(trace, shift=0):
    return [json.dumps({"type": "touch",
                        "event": {"t": e.t + shift, "id": e.id,
                                  "ph": e.phase.value, "x": e.x, "y": e.y}})
            for e in trace.events]


async def drain(conn, timeout=0.3):
    frames = []
    try:
        while True:
            frames.append(json.loads(await asyncio.wait_for(conn.recv(), timeout)))
    except asyncio.TimeoutError:
        return frames


async def scenario():
    ws = await serve("127.0.0.1", 0)
    port = bound_port(ws)
    out = {}
    async with connect(f"ws://127.0.0.1:{port}/?role=presenter") as pres, \
            connect(f"ws://127.0.0.1:{port}/?role=audience") as aud:
        out["pres_snapshot"] = await drain(pres)
        out["aud_snapshot"] = await drain(aud)

        for frame in touch_frames(
                synth.stroke_trace([(100.0, 100.0), (300.0, 200.0)])):
            await pres.send(frame)
        out["pres_stroke"] = await drain(pres)
        out["aud_stroke"] = await drain(aud)

        contacts = [(900.0, 500.0), (960.0, 480.0), (1020.0, 500.0)]
        for frame in touch_frames(synth.menu_tap_trace(contacts), shift=10_000):
            await pres.send(frame)
        out["pres_menu"] = await drain(pres)
        out["aud_menu"] = await drain(aud)

        await pres.send("{bad frame")
        out["pres_bad"] = await drain(pres)
        out["aud_bad"] = await drain(aud)
    ws.close()
    await ws.wait_closed()
    return out


def test_socket_session_policy_end_to_end():
    out = asyncio.run(scenario())

    assert [f["type"] for f in out["pres_snapshot"]] == ["scene", "menu"]
    assert [f["type"] for f in out["aud_snapshot"]] == ["scene"]

    assert any(f["type"] == "scene" and
               f["doc"]["slides"][0]["objects"] for f in out["pres_stroke"])
    assert any(f["type"] == "scene" and
               f["doc"]["slides"][0]["objects"] for f in out["aud_stroke"])

    menu_frames = [f for f in out["pres_menu"] if f["type"] == "menu"]
    assert [f["visible"] for f in menu_frames] == [True, False]
    assert "geometry" in menu_frames[0]
    assert out["aud_menu"] == []

    assert any(f["type"] == "diagnostic" for f in out["pres_bad"])
    assert out["aud_bad"] == []
