/** Parameter bookkeeping along one axis: where vertices, control points,
 * and edit windows live in the normalized parameter domain.
 *
 * The service samples meshes uniformly over the normalized domain, so a
 * closed curve with n vertices puts vertex i at lo + (hi-lo)*i/n and an
 * open one at lo + (hi-lo)*i/(n-1). A control point's edit window is the
 * support of its basis function; the service reports the authoritative
 * window on every move, and the same formula is used here for the
 * optimistic preview.
 */

import type { AxisDocument, Window } from "./types.js";

export function vertexParams(
  count: number,
  domain: Window,
  closed: boolean,
): number[] {
  const [lo, hi] = domain;
  const span = hi - lo;
  const div = closed ? count : count - 1;
  const out = new Array<number>(count);
  for (let i = 0; i < count; i++) {
    out[i] = lo + (span * i) / (div || 1);
  }
  return out;
}

function rootCount(axis: AxisDocument): number {
  return axis.roots.length;
}

/** Normalized parameter interval affected by moving coefficient k. */
export function coefficientWindow(
  axis: AxisDocument,
  k: number,
  origin: number,
): Window {
  const n0 = rootCount(axis);
  const c = k + origin;
  if (axis.scale === 1) {
    // interpolatory stage: the point sits at c and influences +-(n0-1)
    return [(c - (n0 - 1)) / axis.density, (c + (n0 - 1)) / axis.density];
  }
  const s = axis.scale;
  const left = (c - s * (n0 - 1)) / s;
  return [left / axis.density, (left + n0) / axis.density];
}

/** Parameter of the on-curve sample that coefficient k interpolates
 * (interpolatory stage only; refined stages have no such parameter). */
export function coefficientParam(
  axis: AxisDocument,
  k: number,
  origin: number,
): number {
  return (k + origin) / axis.density;
}

/** Wrap-aware membership of t in a window over a periodic or open domain. */
export function inWindow(
  t: number,
  window: Window,
  domain: Window,
  periodic: boolean,
): boolean {
  const [lo, hi] = window;
  if (!periodic) {
    return t >= lo && t <= hi;
  }
  const span = domain[1] - domain[0];
  const width = hi - lo;
  if (width >= span) {
    return true;
  }
  const offset = (((t - lo) % span) + span) % span;
  return offset <= width;
}

/** Distance from t to the window center, wrap-aware; used for preview
 * falloff weights. */
export function wrappedDistance(
  t: number,
  center: number,
  domain: Window,
  periodic: boolean,
): number {
  const raw = Math.abs(t - center);
  if (!periodic) {
    return raw;
  }
  const span = domain[1] - domain[0];
  const m = raw % span;
  return Math.min(m, span - m);
}
