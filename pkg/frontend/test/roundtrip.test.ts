// Round trip against the real session server: a scripted presenter
// drives a stroke and a three-finger Back swipe with synthesized
// pointer events; an audience window watches. The server document must
// end up holding the stroke on the slide it was drawn on, the current
// slide must step back, and the audience display list must never
// contain a menu layer.

import { ChildProcess, spawn } from 'node:child_process';
import { dirname, resolve } from 'node:path';
import { fileURLToPath } from 'node:url';
import WebSocket from 'ws';
import { afterAll, beforeAll, describe, expect, it } from 'vitest';

import { WhiteboardClient } from '../src/client.js';
import { SceneFrame, sessionUrl } from '../src/protocol.js';
import { Layer, buildDisplayList } from '../src/render.js';
import { ContactTracker } from '../src/touch.js';
import { FakeClock, menuSwipeSamples, strokeSamples } from './drive.js';

const ROOT = resolve(dirname(fileURLToPath(import.meta.url)), '../..');

let server: ChildProcess | null = null;
let serverUrl = '';
let stderrLog = '';

function startServer(): Promise<string> {
  return new Promise((resolveUrl, reject) => {
    const child = spawn(
      'palmboard',
      ['serve', '--listen', '127.0.0.1:0', '--doc', 'corpus/deck3.json'],
      { cwd: ROOT, stdio: ['ignore', 'pipe', 'pipe'] },
    );
    server = child;
    const timer = setTimeout(
      () => reject(new Error(`server never announced a port\n${stderrLog}`)),
      10_000,
    );
    let buf = '';
    child.stdout!.on('data', (chunk: Buffer) => {
      buf += chunk.toString();
      const m = buf.match(/ws:\/\/127\.0\.0\.1:(\d+)/);
      if (m) {
        clearTimeout(timer);
        resolveUrl(`ws://127.0.0.1:${m[1]}`);
      }
    });
    child.stderr!.on('data', (chunk: Buffer) => {
      stderrLog += chunk.toString();
    });
    child.on('error', (err) => {
      clearTimeout(timer);
      reject(new Error(`could not spawn palmboard (pip install -e . first?): ${err}`));
    });
    child.on('exit', (code) => {
      clearTimeout(timer);
      reject(new Error(`server exited early (code ${code})\n${stderrLog}`));
    });
  });
}

function connect(role: 'presenter' | 'audience') {
  const socket = new WebSocket(sessionUrl(serverUrl, role));
  const client = new WhiteboardClient(socket, role);
  const layerLog: Layer[][] = [];
  client.onChange = () => layerLog.push(buildDisplayList(client.view));
  const opened = new Promise<void>((res, rej) => {
    socket.once('open', () => res());
    socket.once('error', (err) => rej(err));
  });
  return { client, layerLog, opened };
}

async function until(pred: () => boolean, what: string, timeoutMs = 8000) {
  const t0 = Date.now();
  while (!pred()) {
    if (Date.now() - t0 > timeoutMs) {
      throw new Error(`timed out waiting for ${what}\n${stderrLog}`);
    }
    await new Promise((r) => setTimeout(r, 25));
  }
}

beforeAll(async () => {
  serverUrl = await startServer();
}, 15_000);

afterAll(() => {
  server?.kill();
});

describe('live session round trip', () => {
  it(
    'stroke plus menu Back lands in the document; audience never sees a menu',
    async () => {
      const presenter = connect('presenter');
      const audience = connect('audience');
      await presenter.opened;
      await audience.opened;

      // both roles get a scene snapshot on connect; deck3 opens on slide 1
      await until(() => presenter.client.view.scene !== null, 'presenter snapshot');
      await until(() => audience.client.view.scene !== null, 'audience snapshot');
      expect(presenter.client.view.scene!.slide).toBe(1);

      const clock = new FakeClock();
      clock.t = 1000;
      const tracker = new ContactTracker(clock.now);

      // one-finger stroke on the current slide
      const strokePts: Array<[number, number]> = [];
      for (let i = 0; i <= 10; i++) strokePts.push([300 + 40 * i, 650]);
      presenter.client.sendTouches(strokeSamples(tracker, clock, strokePts));

      await until(
        () =>
          presenter.client.view.scene !== null &&
          presenter.client.view.scene.doc.slides[1].objects.length === 1,
        'stroke to land in the document',
      );

      // three fingers settle (menu pops), swipe left onto Back, lift
      clock.tick(500);
      const tri: Array<[number, number]> = [
        [900, 500],
        [960, 480],
        [1020, 500],
      ];
      presenter.client.sendTouches(menuSwipeSamples(tracker, clock, tri, 180, 60));

      await until(
        () =>
          presenter.client.view.scene !== null &&
          presenter.client.view.scene.slide === 0,
        'Back selection to change the slide',
      );
      await until(
        () =>
          audience.client.view.scene !== null && audience.client.view.scene.slide === 0,
        'audience to catch up',
      );

      const finalScene: SceneFrame = audience.client.view.scene!;
      expect(finalScene.slide).toBe(0);
      expect(finalScene.doc.current_slide).toBe(0);

      // the stroke stayed on the slide it was drawn on
      const drawn = finalScene.doc.slides[1].objects;
      expect(drawn).toHaveLength(1);
      const stroke = drawn[0];
      if (stroke.kind !== 'stroke') throw new Error('expected a stroke object');
      expect(stroke.points.length).toBeGreaterThanOrEqual(2);
      expect(stroke.points[0][0]).toBeCloseTo(300, 6);
      expect(stroke.points[0][1]).toBeCloseTo(650, 6);
      expect(stroke.points[stroke.points.length - 1][0]).toBeCloseTo(700, 6);
      expect(stroke.points[stroke.points.length - 1][1]).toBeCloseTo(650, 6);

      // presenter saw the pie menu while the swipe was in flight
      const sawMenu = presenter.layerLog.some((layers) =>
        layers.some((l) => l.kind === 'menu'),
      );
      expect(sawMenu).toBe(true);

      // the audience scene graph never contained a menu layer, and no
      // menu frame ever reached the audience socket at all
      expect(audience.layerLog.length).toBeGreaterThan(0);
      for (const layers of audience.layerLog) {
        expect(layers.some((l) => l.kind === 'menu')).toBe(false);
      }
      expect(audience.client.protocolViolations).toBe(0);

      presenter.client.close();
      audience.client.close();
    },
    30_000,
  );
});
