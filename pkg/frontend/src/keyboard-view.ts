/** Keyboard rendering and pointer capture.
 *
 * The keyboard is drawn at true physical size using the calibration scale.
 * Pointer positions are converted to keyboard-relative millimeters before
 * they leave this module; everything downstream is resolution-independent.
 * A canvas overlay shows the swipe trail while a gesture is in flight.
 */

import { Calibration } from './calibration.js';
import { Geometry } from './geometry.js';
import type { PointerKind, Variant } from './protocol.js';

export interface PointerSample {
  kind: PointerKind;
  x: number;
  y: number;
  t: number;
}

export class KeyboardView {
  readonly root: HTMLElement;
  private readonly canvas: HTMLCanvasElement;
  private readonly keyEls = new Map<number, HTMLElement>();
  private trail: Array<{ x: number; y: number }> = [];
  private tracking = false;

  constructor(
    geometry: Geometry,
    private readonly calibration: Calibration,
    private readonly variant: Variant,
    private readonly onSample: (sample: PointerSample) => void,
  ) {
    const widthPx = calibration.mmToPx(geometry.width);
    const heightPx = calibration.mmToPx(geometry.height);

    this.root = document.createElement('div');
    this.root.className = 'keyboard';
    this.root.style.position = 'relative';
    this.root.style.width = `${widthPx}px`;
    this.root.style.height = `${heightPx}px`;
    this.root.style.touchAction = 'none';
    this.root.style.userSelect = 'none';

    for (const digit of geometry.digits()) {
      const b = geometry.keyBounds(digit);
      const el = document.createElement('div');
      el.className = 'key';
      el.dataset.digit = String(digit);
      el.style.position = 'absolute';
      el.style.left = `${calibration.mmToPx(b.x0)}px`;
      el.style.top = `${calibration.mmToPx(b.y0)}px`;
      el.style.width = `${calibration.mmToPx(b.x1 - b.x0)}px`;
      el.style.height = `${calibration.mmToPx(b.y1 - b.y0)}px`;
      el.textContent = geometry.letters(digit);
      if (digit === 1) {
        el.classList.add(variant === 'enhanced-key-1' ? 'key-mirror' : 'key-inert');
      }
      this.root.appendChild(el);
      this.keyEls.set(digit, el);
    }

    this.canvas = document.createElement('canvas');
    this.canvas.width = Math.round(widthPx * devicePixelRatio);
    this.canvas.height = Math.round(heightPx * devicePixelRatio);
    this.canvas.style.position = 'absolute';
    this.canvas.style.inset = '0';
    this.canvas.style.width = `${widthPx}px`;
    this.canvas.style.height = `${heightPx}px`;
    this.canvas.style.pointerEvents = 'none';
    this.root.appendChild(this.canvas);

    this.root.addEventListener('pointerdown', (e) => this.onPointer('down', e));
    this.root.addEventListener('pointermove', (e) => this.onPointer('move', e));
    this.root.addEventListener('pointerup', (e) => this.onPointer('up', e));
    this.root.addEventListener('pointercancel', (e) => this.onPointer('up', e));
  }

  /** Mirror `letters` on key 1 (empty string clears it). */
  setKey1Label(letters: string): void {
    if (this.variant !== 'enhanced-key-1') {
      return;
    }
    const el = this.keyEls.get(1);
    if (el && el.textContent !== letters) {
      el.textContent = letters;
    }
  }

  private onPointer(kind: PointerKind, e: PointerEvent): void {
    if (kind === 'down') {
      this.tracking = true;
      this.trail = [];
      this.root.setPointerCapture(e.pointerId);
    } else if (!this.tracking) {
      return;
    }
    const rect = this.root.getBoundingClientRect();
    const xPx = e.clientX - rect.left;
    const yPx = e.clientY - rect.top;
    this.trail.push({ x: xPx, y: yPx });
    this.drawTrail();
    this.onSample({
      kind,
      x: this.calibration.pxToMm(xPx),
      y: this.calibration.pxToMm(yPx),
      t: e.timeStamp,
    });
    if (kind === 'up') {
      this.tracking = false;
      this.trail = [];
      this.drawTrail();
    }
    e.preventDefault();
  }

  private drawTrail(): void {
    const ctx = this.canvas.getContext('2d');
    if (!ctx) {
      return;
    }
    ctx.setTransform(devicePixelRatio, 0, 0, devicePixelRatio, 0, 0);
    ctx.clearRect(0, 0, this.canvas.width, this.canvas.height);
    if (this.trail.length < 2) {
      return;
    }
    ctx.beginPath();
    ctx.moveTo(this.trail[0].x, this.trail[0].y);
    for (const p of this.trail.slice(1)) {
      ctx.lineTo(p.x, p.y);
    }
    ctx.lineWidth = 3;
    ctx.lineCap = 'round';
    ctx.lineJoin = 'round';
    ctx.strokeStyle = 'rgba(30, 110, 210, 0.7)';
    ctx.stroke();
  }
}
