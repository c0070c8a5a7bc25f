/** Physical-size calibration.
 *
 * Browsers misreport physical DPI, so the keyboard cannot be drawn at true
 * size from CSS units alone.  The user drags an on-screen rectangle until it
 * matches the width of a standard bank card (85.6 mm); the resulting
 * pixels-per-millimeter scale converts between screen pixels and the
 * physical millimeters the protocol speaks.  The study cannot start until a
 * plausible scale is confirmed.
 */

export const CARD_WIDTH_MM = 85.6;

/** Sanity bounds: ~30–600 dpi covers every real screen. */
const MIN_PX_PER_MM = 1.2;
const MAX_PX_PER_MM = 24.0;

export class Calibration {
  private scale: number | null = null;

  /** Record a measured card width in CSS pixels.  Returns false (and leaves
   * the calibration unset) when the implied scale is implausible. */
  confirmCardWidth(measuredPx: number): boolean {
    const pxPerMm = measuredPx / CARD_WIDTH_MM;
    if (!Number.isFinite(pxPerMm) || pxPerMm < MIN_PX_PER_MM || pxPerMm > MAX_PX_PER_MM) {
      return false;
    }
    this.scale = pxPerMm;
    return true;
  }

  get done(): boolean {
    return this.scale !== null;
  }

  get pxPerMm(): number {
    if (this.scale === null) {
      throw new Error('not calibrated');
    }
    return this.scale;
  }

  pxToMm(px: number): number {
    return px / this.pxPerMm;
  }

  mmToPx(mm: number): number {
    return mm * this.pxPerMm;
  }
}
