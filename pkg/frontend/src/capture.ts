/** Pointer-to-stroke capture.
 *
 * One pointer-down .. pointer-up gesture becomes exactly one stroke;
 * coordinates are mapped into the canvas pixel space declared to the
 *  service, regardless of how the SVG element is scaled on screen.
 */

import type { RawStroke, StrokePoint } from "./types.js";

export interface ElementRect {
  left: number;
  top: number;
  width: number;
  height: number;
}

/** Map a client-space pointer position into canvas pixel space. */
export function toCanvasSpace(
  clientX: number,
  clientY: number,
  rect: ElementRect,
  canvasWidth: number,
  canvasHeight: number,
): StrokePoint {
  return {
    x: ((clientX - rect.left) / rect.width) * canvasWidth,
    y: ((clientY - rect.top) / rect.height) * canvasHeight,
  };
}

export class StrokeCapture {
  private points: StrokePoint[] = [];
  private active = false;

  begin(point: StrokePoint): void {
    this.points = [point];
    this.active = true;
  }

  move(point: StrokePoint): void {
    if (!this.active) {
      return;
    }
    const last = this.points[this.points.length - 1];
    // the service rejects consecutive duplicate points
    if (last && last.x === point.x && last.y === point.y && last.t === point.t) {
      return;
    }
    this.points.push(point);
  }

  /** Finish the gesture; returns null for an empty gesture. */
  end(): RawStroke | null {
    if (!this.active || this.points.length === 0) {
      this.active = false;
      return null;
    }
    const stroke: RawStroke = { points: this.points };
    this.points = [];
    this.active = false;
    return stroke;
  }

  get isActive(): boolean {
    return this.active;
  }

  get livePoints(): readonly StrokePoint[] {
    return this.points;
  }
}
