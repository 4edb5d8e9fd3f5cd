// Mouse rig: fakes 2- and 3-contact constellations around the cursor
// so pan/zoom and the three-finger gestures work without a touchscreen.
// Hold "2" or "3" while dragging; "1" (or nothing) is a plain stroke.

import { TouchSample } from './protocol.js';
import { ContactTracker } from './touch.js';

export type RigMode = 1 | 2 | 3;

const SPREAD = 60;

// Synthetic pointer ids live far above anything a real device hands out.
const RIG_BASE_ID = 9000;

export function rigContacts(mode: RigMode, x: number, y: number): Array<[number, number]> {
  switch (mode) {
    case 1:
      return [[x, y]];
    case 2:
      return [
        [x - SPREAD, y],
        [x + SPREAD, y],
      ];
    case 3:
      return [
        [x - SPREAD, y + 20],
        [x, y - SPREAD * 0.4],
        [x + SPREAD, y + 20],
      ];
  }
}

export class MouseRig {
  mode: RigMode = 1;
  private dragging = false;
  private tracker: ContactTracker;
  private emit: (sample: TouchSample) => void;

  constructor(tracker: ContactTracker, emit: (sample: TouchSample) => void) {
    this.tracker = tracker;
    this.emit = emit;
  }

  setMode(mode: RigMode) {
    if (this.dragging) return; // constellation is fixed for the drag
    this.mode = mode;
  }

  private fan(ph: 'd' | 'm' | 'u', x: number, y: number) {
    const points = rigContacts(this.mode, x, y);
    points.forEach(([px, py], i) => {
      const pid = RIG_BASE_ID + i;
      const sample =
        ph === 'd'
          ? this.tracker.down(pid, px, py)
          : ph === 'm'
            ? this.tracker.move(pid, px, py)
            : this.tracker.up(pid, px, py);
      if (sample) this.emit(sample);
    });
  }

  press(x: number, y: number) {
    if (this.dragging) return;
    this.dragging = true;
    this.fan('d', x, y);
  }

  drag(x: number, y: number) {
    if (!this.dragging) return;
    this.fan('m', x, y);
  }

  release(x: number, y: number) {
    if (!this.dragging) return;
    this.fan('u', x, y);
    this.dragging = false;
  }
}
