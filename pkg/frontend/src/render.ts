// Scene -> display list. Pure data so tests can assert on layers
// without a canvas; main.ts paints the same list onto 2d context.

import {
  MenuFrame,
  MenuGeometry,
  Role,
  SceneFrame,
  SceneObject,
  Transform,
} from './protocol.js';

export interface ClientView {
  role: Role;
  scene: SceneFrame | null;
  menu: MenuFrame | null;
  palmShadow: boolean;
}

export type Layer =
  | { kind: 'background'; w: number; h: number }
  | { kind: 'canvas'; transform: Transform; objects: SceneObject[] }
  | { kind: 'palm-shadow'; center: [number, number]; radius: number }
  | { kind: 'menu'; geometry: MenuGeometry; highlighted: number | null };

export function buildDisplayList(view: ClientView): Layer[] {
  const layers: Layer[] = [];
  const scene = view.scene;
  if (scene) {
    const [w, h] = scene.doc.viewport;
    layers.push({ kind: 'background', w, h });
    const slide = scene.doc.slides[scene.slide];
    if (slide) {
      layers.push({ kind: 'canvas', transform: scene.transform, objects: slide.objects });
    }
  }
  // The server never sends menu frames to the audience; the guard here
  // is belt and braces so a buggy or hostile peer cannot leak the menu.
  if (view.role === 'presenter' && view.menu && view.menu.visible && view.menu.geometry) {
    const geo = view.menu.geometry;
    if (view.palmShadow) {
      layers.push({ kind: 'palm-shadow', center: geo.center, radius: geo.radius * 1.8 });
    }
    layers.push({
      kind: 'menu',
      geometry: geo,
      highlighted: view.menu.highlighted ?? null,
    });
  }
  return layers;
}

export interface BBox {
  minX: number;
  minY: number;
  maxX: number;
  maxY: number;
}

// Axis-aligned bounds of everything on the canvas layer, in slide space.
export function contentBounds(layers: Layer[]): BBox | null {
  let box: BBox | null = null;
  const grow = (x: number, y: number) => {
    if (!box) {
      box = { minX: x, minY: y, maxX: x, maxY: y };
    } else {
      box.minX = Math.min(box.minX, x);
      box.minY = Math.min(box.minY, y);
      box.maxX = Math.max(box.maxX, x);
      box.maxY = Math.max(box.maxY, y);
    }
  };
  for (const layer of layers) {
    if (layer.kind !== 'canvas') continue;
    for (const obj of layer.objects) {
      if (obj.kind === 'stroke') {
        for (const [x, y] of obj.points) grow(x, y);
      } else {
        const [x, y, w, h] = obj.rect;
        grow(x, y);
        grow(x + w, y + h);
      }
    }
  }
  return box;
}

// Screen angles: 0 = right, 90 = up, y grows down.
export function angleToVec(deg: number): [number, number] {
  const rad = (deg * Math.PI) / 180;
  return [Math.cos(rad), -Math.sin(rad)];
}

export function menuItemAnchor(geo: MenuGeometry, index: number): [number, number] {
  const item = geo.items[index];
  const [dx, dy] = angleToVec(item.center_angle);
  const r = geo.radius * 0.65;
  return [geo.center[0] + dx * r, geo.center[1] + dy * r];
}
