/** Resolution timeline and the interpolatory-likeness indicator.
 *
 * At the initial resolution control points lie exactly on the shape. After
 * a basis change they become an approximating cage; each refinement pulls
 * them back toward the shape. The indicator reports the worst control
 * point distance in pixels and flips on once it drops below a threshold.
 */

import type { Transform } from "./view2d.js";
import { distanceToPolylinePx, worldToScreen } from "./view2d.js";
import type { ResolutionRecord, Vec } from "./types.js";

export const INTERPOLATORY_THRESHOLD_PX = 1;

export interface TimelineEntry {
  step: number;
  factor: number;
  label: string;
  /** cumulative grid scale after this step */
  scale: number;
}

export function buildTimeline(history: ResolutionRecord[]): TimelineEntry[] {
  const out: TimelineEntry[] = [];
  let scale = 1;
  history.forEach((rec, i) => {
    scale *= rec.factor;
    const what = rec.kind === "pre" ? "basis change" : "refinement";
    out.push({ step: i + 1, factor: rec.factor, label: `${what} x${rec.factor}`, scale });
  });
  return out;
}

/** Worst distance in pixels from a control point to the curve polyline. */
export function netDistancePx(
  netPoints: Vec[],
  vertices: Vec[],
  closed: boolean,
  t: Transform,
): number {
  let worst = 0;
  for (const p of netPoints) {
    worst = Math.max(worst, distanceToPolylinePx(p, vertices, closed, t));
  }
  return worst;
}

/** Worst distance in pixels from control points to projected mesh vertices
 * (surfaces; vertex clouds stand in for the surface). */
export function netDistanceToVerticesPx(
  netScreen: [number, number][],
  vertexScreen: [number, number][],
): number {
  let worst = 0;
  for (const p of netScreen) {
    let best = Infinity;
    for (const v of vertexScreen) {
      best = Math.min(best, Math.hypot(p[0] - v[0], p[1] - v[1]));
    }
    worst = Math.max(worst, best);
  }
  return worst;
}

export function interpolatoryLike(
  distancePx: number,
  thresholdPx = INTERPOLATORY_THRESHOLD_PX,
): boolean {
  return distancePx < thresholdPx;
}

export function projectAll(
  points: Vec[],
  t: Transform,
): [number, number][] {
  return points.map((p) => worldToScreen(p, t));
}
