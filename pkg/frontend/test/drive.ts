// Synthesized pointer gestures for tests: a hand-cranked clock plus
// scripts that push pointer events through a ContactTracker the same
// way the browser handlers do. Timestamps ride in the payload, so no
// real waiting is involved.

import { TouchSample } from '../src/protocol.js';
import { ContactTracker } from '../src/touch.js';

export class FakeClock {
  t = 0;
  now = () => this.t;
  tick(ms: number) {
    this.t += ms;
  }
}

const FRAME_MS = 16;
const HOLD_MS = 96; // first motion lands after the 80 ms settle window

function push(out: TouchSample[], sample: TouchSample | null) {
  if (sample) out.push(sample);
}

// One finger dragged through the given board points.
export function strokeSamples(
  tracker: ContactTracker,
  clock: FakeClock,
  points: Array<[number, number]>,
  pointerId = 501,
): TouchSample[] {
  const out: TouchSample[] = [];
  push(out, tracker.down(pointerId, points[0][0], points[0][1]));
  clock.tick(HOLD_MS);
  for (const [x, y] of points.slice(1)) {
    push(out, tracker.move(pointerId, x, y));
    clock.tick(FRAME_MS);
  }
  const last = points[points.length - 1];
  push(out, tracker.up(pointerId, last[0], last[1]));
  return out;
}

// Three fingers translating rigidly along a screen direction
// (0 = right, 90 = up, y grows down): a menu selection swipe.
export function menuSwipeSamples(
  tracker: ContactTracker,
  clock: FakeClock,
  contacts: Array<[number, number]>,
  directionDeg: number,
  distance: number,
  steps = 14,
  basePointerId = 601,
): TouchSample[] {
  const rad = (directionDeg * Math.PI) / 180;
  const dx = Math.cos(rad) * distance;
  const dy = -Math.sin(rad) * distance;
  const out: TouchSample[] = [];
  contacts.forEach(([x, y], i) => {
    if (i) clock.tick(4);
    push(out, tracker.down(basePointerId + i, x, y));
  });
  clock.tick(HOLD_MS - 4 * (contacts.length - 1));
  for (let s = 1; s <= steps; s++) {
    const k = s / steps;
    contacts.forEach(([x, y], i) => {
      push(out, tracker.move(basePointerId + i, x + dx * k, y + dy * k));
    });
    clock.tick(FRAME_MS);
  }
  contacts.forEach(([x, y], i) => {
    push(out, tracker.up(basePointerId + i, x + dx, y + dy));
  });
  return out;
}
