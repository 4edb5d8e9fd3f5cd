"""End-to-end drive: real server process, two live WebSocket clients.

Requires the package to be installed (the `palmboard` entry point must
be on PATH). Run from the repository root:

    python3 tools/e2e_drive.py
"""

import asyncio
import json
import re
import subprocess
import sys
from pathlib import Path

sys.path.insert(0, str(Path(__file__).resolve().parents[1] / "src"))

import websockets

from palmboard import synth

ROOT = Path(__file__).resolve().parents[1]


async def drain(conn, timeout=0.5):
    frames = []
    try:
        while True:
            frames.append(json.loads(await asyncio.wait_for(conn.recv(), timeout)))
    except (asyncio.TimeoutError, TimeoutError):
        return frames


async def main():
    proc = subprocess.Popen(
        ["palmboard", "serve", "--listen", "127.0.0.1:0",
         "--doc", str(ROOT / "corpus" / "deck3.json")],
        stdout=subprocess.PIPE, text=True)
    line = proc.stdout.readline()
    port = int(re.search(r"ws://127\.0\.0\.1:(\d+)", line).group(1))
    print("server:", line.strip())

    async with websockets.connect(f"ws://127.0.0.1:{port}/?role=presenter") as pres, \
               websockets.connect(f"ws://127.0.0.1:{port}/?role=audience") as aud:
        p0, a0 = await drain(pres), await drain(aud)
        assert [f["type"] for f in p0] == ["scene", "menu"], p0
        assert [f["type"] for f in a0] == ["scene"], a0
        assert p0[0]["slide"] == 1

        shift = 0
        traces = [
            synth.stroke_trace([(100.0, 100.0), (500.0, 400.0)]),
            synth.menu_swipe_trace(
                [(900.0, 500.0), (960.0, 480.0), (1020.0, 500.0)], 180.0, 60.0),
        ]
        for tr in traces:
            for ev in tr.events:
                await pres.send(json.dumps({"type": "touch", "event": {
                    "t": ev.t + shift, "id": ev.id, "ph": ev.phase.value,
                    "x": ev.x, "y": ev.y}}))
            shift += tr.events[-1].t + 500

        pf, af = await drain(pres), await drain(aud)
        p_types = [f["type"] for f in pf]
        a_types = {f["type"] for f in af}
        assert "menu" in p_types and "scene" in p_types, p_types
        assert any(f["type"] == "menu" and f["visible"] for f in pf)
        assert a_types == {"scene"}, a_types
        final = [f for f in af if f["type"] == "scene"][-1]
        assert final["slide"] == 0, final["slide"]
        strokes = final["doc"]["slides"][1]["objects"]
        assert len(strokes) == 1 and strokes[0]["kind"] == "stroke"
        print(f"presenter got {len(pf)} frames ({p_types.count('menu')} menu), "
              f"audience got {len(af)} scene-only frames")
        print("stroke kept on slide 1, Back selection moved view to slide 0: OK")

    proc.terminate()
    proc.wait(timeout=5)
    print("e2e drive: PASS")


asyncio.run(main())
