/** Client-side view of the keyboard geometry received at session start.
 *
 * All positions are in physical millimeters with the origin at the top-left
 * of the keyboard and y growing downward, matching the service.  Pixel
 * conversion happens at the rendering boundary via a calibration scale.
 */

import type { GeometryDoc } from './protocol.js';

export interface KeyBounds {
  x0: number;
  y0: number;
  x1: number;
  y1: number;
}

export class Geometry {
  readonly width: number;
  readonly height: number;
  readonly rows: number;
  readonly cols: number;
  readonly gap: number;
  readonly letterMap: ReadonlyMap<number, string>;

  constructor(doc: GeometryDoc) {
    this.width = doc.width;
    this.height = doc.height;
    this.rows = doc.rows;
    this.cols = doc.cols;
    this.gap = doc.gap;
    const entries: Array<[number, string]> = Object.entries(doc.letter_map).map(
      ([digit, letters]) => [Number(digit), letters],
    );
    this.letterMap = new Map(entries);
  }

  get keyWidth(): number {
    return (this.width - this.gap * (this.cols - 1)) / this.cols;
  }

  get keyHeight(): number {
    return (this.height - this.gap * (this.rows - 1)) / this.rows;
  }

  digits(): number[] {
    return Array.from({ length: this.rows * this.cols }, (_, i) => i + 1);
  }

  keyBounds(digit: number): KeyBounds {
    const row = Math.floor((digit - 1) / this.cols);
    const col = (digit - 1) % this.cols;
    const x0 = col * (this.keyWidth + this.gap);
    const y0 = row * (this.keyHeight + this.gap);
    return { x0, y0, x1: x0 + this.keyWidth, y1: y0 + this.keyHeight };
  }

  keyCenter(digit: number): { x: number; y: number } {
    const b = this.keyBounds(digit);
    return { x: (b.x0 + b.x1) / 2, y: (b.y0 + b.y1) / 2 };
  }

  letters(digit: number): string {
    return this.letterMap.get(digit) ?? '';
  }
}
