// Wire types for the session protocol (see ../../docs/wire-protocol.md).
// One JSON text frame per message in each direction.

export type Role = 'presenter' | 'audience';
export type Phase = 'd' | 'm' | 'u';

export interface TouchSample {
  t: number;
  id: number;
  ph: Phase;
  x: number;
  y: number;
}

export type ClientMessage =
  | { type: 'touch'; event: TouchSample }
  | { type: 'set_config'; config: Record<string, unknown> }
  | { type: 'load_document'; text: string }
  | { type: 'view_request'; role: Role };

export interface Transform {
  scale: number;
  tx: number;
  ty: number;
}

export interface StrokeObject {
  kind: 'stroke';
  points: [number, number][];
  width: number;
  color: string;
}

export interface ImageObject {
  kind: 'image';
  rect: [number, number, number, number];
  resource: string;
}

export type SceneObject = StrokeObject | ImageObject;

export interface Slide {
  objects: SceneObject[];
  transform: Transform;
}

export interface DocumentState {
  slides: Slide[];
  current_slide: number;
  selection: number | null;
  clipboard: SceneObject | null;
  viewport: [number, number];
}

export interface SceneFrame {
  type: 'scene';
  doc: DocumentState;
  transform: Transform;
  slide: number;
}

export interface MenuArc {
  item: number;
  start: number; // degrees, half-open [start, end) going counter-clockwise
  end: number;
}

export interface MenuGeometry {
  center: [number, number];
  radius: number;
  orientation: number;
  items: { label: string; action: string; center_angle: number }[];
  arcs: MenuArc[];
}

export interface MenuFrame {
  type: 'menu';
  visible: boolean;
  geometry?: MenuGeometry;
  highlighted?: number;
}

export interface DiagnosticFrame {
  type: 'diagnostic';
  text: string;
}

export type ServerFrame = SceneFrame | MenuFrame | DiagnosticFrame;

export function parseServerFrame(data: string): ServerFrame | null {
  let raw: unknown;
  try {
    raw = JSON.parse(data);
  } catch {
    return null;
  }
  if (typeof raw !== 'object' || raw === null) return null;
  const frame = raw as { type?: unknown };
  if (frame.type === 'scene' || frame.type === 'menu' || frame.type === 'diagnostic') {
    return raw as ServerFrame;
  }
  return null;
}

export function encodeMessage(msg: ClientMessage): string {
  return JSON.stringify(msg);
}

export function sessionUrl(base: string, role: Role): string {
  return `${base.replace(/\/$/, '')}/?role=${role}`;
}
