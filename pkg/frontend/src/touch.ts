// Pointer capture: browser pointer events in, legal touch samples out.
//
// The session rejects streams that go back in time or move contacts
// that are not down, so everything funnels through one tracker that
// owns the contact-id table and a monotonic clock.

import { TouchSample } from './protocol.js';

export const MAX_CONTACTS = 10;

export interface BoardSize {
  w: number;
  h: number;
}

export class ContactTracker {
  private contacts = new Map<number, number>(); // pointerId -> contact id
  private lastT = 0;
  private now: () => number;
  onWarning: ((text: string) => void) | null = null;

  constructor(now?: () => number) {
    this.now = now ?? (() => Date.now());
  }

  private stamp(): number {
    const t = Math.max(this.lastT, Math.round(this.now()));
    this.lastT = t;
    return t;
  }

  private warn(text: string) {
    if (this.onWarning) this.onWarning(text);
  }

  activeCount(): number {
    return this.contacts.size;
  }

  down(pointerId: number, x: number, y: number): TouchSample | null {
    if (this.contacts.has(pointerId)) {
      this.warn(`pointer ${pointerId} went down twice; dropped`);
      return null;
    }
    if (this.contacts.size >= MAX_CONTACTS) {
      this.warn(`more than ${MAX_CONTACTS} contacts; extra pointer dropped`);
      return null;
    }
    let cid = 0;
    const used = new Set(this.contacts.values());
    while (used.has(cid)) cid++;
    this.contacts.set(pointerId, cid);
    return { t: this.stamp(), id: cid, ph: 'd', x, y };
  }

  move(pointerId: number, x: number, y: number): TouchSample | null {
    const cid = this.contacts.get(pointerId);
    if (cid === undefined) return null; // hover or dropped pointer
    return { t: this.stamp(), id: cid, ph: 'm', x, y };
  }

  up(pointerId: number, x: number, y: number): TouchSample | null {
    const cid = this.contacts.get(pointerId);
    if (cid === undefined) return null;
    this.contacts.delete(pointerId);
    return { t: this.stamp(), id: cid, ph: 'u', x, y };
  }
}

// Map a point from a DOM rect to board space, clamped to the board.
export function boardPoint(
  rect: { left: number; top: number; width: number; height: number },
  clientX: number,
  clientY: number,
  board: BoardSize,
): [number, number] {
  const x = ((clientX - rect.left) / rect.width) * board.w;
  const y = ((clientY - rect.top) / rect.height) * board.h;
  return [Math.min(Math.max(x, 0), board.w), Math.min(Math.max(y, 0), board.h)];
}
