// WebSocket session client. The socket is injected through the
// browser-style on* surface so tests can plug in the `ws` package
// and the browser uses native WebSocket unchanged.

import {
  ClientMessage,
  DiagnosticFrame,
  Role,
  ServerFrame,
  TouchSample,
  encodeMessage,
  parseServerFrame,
} from './protocol.js';
import { ClientView } from './render.js';

// Loose handler params so both the browser WebSocket and the `ws`
// package satisfy this without adapters.
export interface SocketLike {
  send(data: string): void;
  close(): void;
  onopen: ((ev: any) => void) | null;
  onmessage: ((ev: any) => void) | null;
  onclose: ((ev: any) => void) | null;
  onerror: ((ev: any) => void) | null;
}

const DIAGNOSTIC_LOG_LIMIT = 20;

export class WhiteboardClient {
  readonly role: Role;
  readonly view: ClientView;
  diagnostics: DiagnosticFrame[] = [];
  protocolViolations = 0;
  connected = false;
  onChange: (() => void) | null = null;

  private socket: SocketLike;

  constructor(socket: SocketLike, role: Role) {
    this.role = role;
    this.view = { role, scene: null, menu: null, palmShadow: false };
    this.socket = socket;
    socket.onopen = () => {
      this.connected = true;
      this.emitChange();
    };
    socket.onclose = () => {
      this.connected = false;
      this.emitChange();
    };
    socket.onmessage = (ev: { data: unknown }) => {
      this.handleFrame(String(ev.data));
    };
  }

  private emitChange() {
    if (this.onChange) this.onChange();
  }

  handleFrame(data: string) {
    const frame = parseServerFrame(data);
    if (!frame) return;
    this.applyFrame(frame);
    this.emitChange();
  }

  private applyFrame(frame: ServerFrame) {
    switch (frame.type) {
      case 'scene':
        this.view.scene = frame;
        break;
      case 'menu':
        if (this.role === 'audience') {
          // Audience sessions must never see menu state. Count it so
          // tests can detect a server that leaks, and drop the frame.
          this.protocolViolations++;
          return;
        }
        this.view.menu = frame;
        break;
      case 'diagnostic':
        this.diagnostics.push(frame);
        if (this.diagnostics.length > DIAGNOSTIC_LOG_LIMIT) {
          this.diagnostics.shift();
        }
        break;
    }
  }

  private send(msg: ClientMessage) {
    this.socket.send(encodeMessage(msg));
  }

  sendTouch(sample: TouchSample) {
    this.send({ type: 'touch', event: sample });
  }

  sendTouches(samples: Array<TouchSample | null>) {
    for (const s of samples) {
      if (s) this.sendTouch(s);
    }
  }

  requestView() {
    this.send({ type: 'view_request', role: this.role });
  }

  loadDocument(text: string) {
    this.send({ type: 'load_document', text });
  }

  setConfig(config: Record<string, unknown>) {
    this.send({ type: 'set_config', config });
  }

  setPalmShadow(on: boolean) {
    this.view.palmShadow = on;
    this.emitChange();
  }

  close() {
    this.socket.close();
  }
}
