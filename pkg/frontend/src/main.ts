// Browser entry point. Connects to the session server, forwards
// pointer events, and paints the display list onto a canvas.

import { WhiteboardClient } from './client.js';
import { MenuGeometry, Role, Transform, sessionUrl } from './protocol.js';
import { Layer, angleToVec, buildDisplayList } from './render.js';
import { MouseRig, RigMode } from './rig.js';
import { ContactTracker, boardPoint } from './touch.js';

const BOARD = { w: 1920, h: 1080 };

function pickRole(): Role {
  const q = new URLSearchParams(window.location.search);
  return q.get('role') === 'audience' ? 'audience' : 'presenter';
}

function serverBase(): string {
  const q = new URLSearchParams(window.location.search);
  const explicit = q.get('server');
  if (explicit) return explicit;
  return `ws://${window.location.hostname || 'localhost'}:8765`;
}

function paintCanvasLayer(
  ctx: CanvasRenderingContext2D,
  layer: Extract<Layer, { kind: 'canvas' }>,
) {
  const t: Transform = layer.transform;
  ctx.save();
  ctx.translate(t.tx, t.ty);
  ctx.scale(t.scale, t.scale);
  for (const obj of layer.objects) {
    if (obj.kind === 'stroke') {
      if (obj.points.length === 0) continue;
      ctx.beginPath();
      ctx.moveTo(obj.points[0][0], obj.points[0][1]);
      for (const [x, y] of obj.points.slice(1)) ctx.lineTo(x, y);
      ctx.strokeStyle = obj.color;
      ctx.lineWidth = obj.width;
      ctx.lineCap = 'round';
      ctx.lineJoin = 'round';
      ctx.stroke();
    } else {
      const [x, y, w, h] = obj.rect;
      ctx.fillStyle = '#e8e3d8';
      ctx.fillRect(x, y, w, h);
      ctx.strokeStyle = '#8a8374';
      ctx.lineWidth = 2;
      ctx.strokeRect(x, y, w, h);
      ctx.fillStyle = '#55503f';
      ctx.font = '16px sans-serif';
      ctx.textAlign = 'center';
      ctx.fillText(obj.resource, x + w / 2, y + h / 2);
    }
  }
  ctx.restore();
}

function paintMenu(
  ctx: CanvasRenderingContext2D,
  geo: MenuGeometry,
  highlighted: number | null,
) {
  const [cx, cy] = geo.center;
  for (const arc of geo.arcs) {
    // Canvas arcs run clockwise in screen space; our angles are CCW
    // with y down, so negate and swap the ends.
    const a0 = (-arc.end * Math.PI) / 180;
    const a1 = (-arc.start * Math.PI) / 180;
    ctx.beginPath();
    ctx.moveTo(cx, cy);
    ctx.arc(cx, cy, geo.radius, a0, a1);
    ctx.closePath();
    ctx.fillStyle = arc.item === highlighted ? '#4a7dbd' : 'rgba(40, 40, 48, 0.85)';
    ctx.fill();
    ctx.strokeStyle = '#ccc';
    ctx.lineWidth = 1;
    ctx.stroke();
  }
  ctx.fillStyle = '#fff';
  ctx.font = '14px sans-serif';
  ctx.textAlign = 'center';
  ctx.textBaseline = 'middle';
  geo.items.forEach((item, i) => {
    const [dx, dy] = angleToVec(item.center_angle);
    const r = geo.radius * 0.65;
    ctx.fillText(item.label, cx + dx * r, cy + dy * r);
    void i;
  });
}

function paint(ctx: CanvasRenderingContext2D, layers: Layer[]) {
  ctx.clearRect(0, 0, BOARD.w, BOARD.h);
  for (const layer of layers) {
    switch (layer.kind) {
      case 'background':
        ctx.fillStyle = '#fbfaf6';
        ctx.fillRect(0, 0, layer.w, layer.h);
        break;
      case 'canvas':
        paintCanvasLayer(ctx, layer);
        break;
      case 'palm-shadow': {
        ctx.beginPath();
        ctx.arc(layer.center[0], layer.center[1], layer.radius, 0, Math.PI * 2);
        ctx.fillStyle = 'rgba(120, 90, 70, 0.25)';
        ctx.fill();
        break;
      }
      case 'menu':
        paintMenu(ctx, layer.geometry, layer.highlighted);
        break;
    }
  }
}

function start() {
  const role = pickRole();
  const canvas = document.getElementById('board') as HTMLCanvasElement;
  canvas.width = BOARD.w;
  canvas.height = BOARD.h;
  const ctx = canvas.getContext('2d');
  if (!ctx) throw new Error('canvas 2d context unavailable');

  const status = document.getElementById('status');
  const setStatus = (text: string) => {
    if (status) status.textContent = text;
  };

  const socket = new WebSocket(sessionUrl(serverBase(), role));
  const client = new WhiteboardClient(socket, role);
  client.onChange = () => {
    paint(ctx, buildDisplayList(client.view));
    setStatus(client.connected ? `${role} connected` : `${role} disconnected`);
  };

  const tracker = new ContactTracker(() => performance.now());
  tracker.onWarning = (text) => setStatus(text);
  const emit = (sample: ReturnType<ContactTracker['down']>) => {
    if (sample) client.sendTouch(sample);
  };
  const toBoard = (ev: { clientX: number; clientY: number }) =>
    boardPoint(canvas.getBoundingClientRect(), ev.clientX, ev.clientY, BOARD);

  if (role === 'presenter') {
    const rig = new MouseRig(tracker, (s) => client.sendTouch(s));

    canvas.addEventListener('pointerdown', (ev) => {
      ev.preventDefault();
      canvas.setPointerCapture(ev.pointerId);
      const [x, y] = toBoard(ev);
      if (ev.pointerType === 'mouse') rig.press(x, y);
      else emit(tracker.down(ev.pointerId, x, y));
    });
    canvas.addEventListener('pointermove', (ev) => {
      const [x, y] = toBoard(ev);
      if (ev.pointerType === 'mouse') rig.drag(x, y);
      else emit(tracker.move(ev.pointerId, x, y));
    });
    const finish = (ev: PointerEvent) => {
      const [x, y] = toBoard(ev);
      if (ev.pointerType === 'mouse') rig.release(x, y);
      else emit(tracker.up(ev.pointerId, x, y));
    };
    canvas.addEventListener('pointerup', finish);
    canvas.addEventListener('pointercancel', finish);

    window.addEventListener('keydown', (ev) => {
      if (ev.key === '1' || ev.key === '2' || ev.key === '3') {
        rig.setMode(Number(ev.key) as RigMode);
        setStatus(`rig: ${ev.key} contact(s)`);
      } else if (ev.key === 'p') {
        client.setPalmShadow(!client.view.palmShadow);
      }
    });
    window.addEventListener('keyup', (ev) => {
      if (ev.key === '2' || ev.key === '3') rig.setMode(1);
    });
  }

  setStatus(`${role} connecting to ${serverBase()} ...`);
}

start();
