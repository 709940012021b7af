/** 2D canvas view: world-to-screen fitting, hit testing, pixel distances. */

import type { Vec } from "./types.js";

export interface Transform {
  scale: number;
  tx: number;
  ty: number;
}

export function worldToScreen(p: Vec, t: Transform): [number, number] {
  return [t.tx + t.scale * (p[0] ?? 0), t.ty - t.scale * (p[1] ?? 0)];
}

export function screenToWorld(s: [number, number], t: Transform): Vec {
  return [(s[0] - t.tx) / t.scale, (t.ty - s[1]) / t.scale];
}

/** Uniform-scale fit of the bounding box into the canvas with a margin. */
export function fitTransform(
  points: Vec[],
  width: number,
  height: number,
  margin = 40,
): Transform {
  let minX = Infinity;
  let maxX = -Infinity;
  let minY = Infinity;
  let maxY = -Infinity;
  for (const p of points) {
    const x = p[0] ?? 0;
    const y = p[1] ?? 0;
    minX = Math.min(minX, x);
    maxX = Math.max(maxX, x);
    minY = Math.min(minY, y);
    maxY = Math.max(maxY, y);
  }
  if (!isFinite(minX)) {
    return { scale: 1, tx: width / 2, ty: height / 2 };
  }
  const dx = maxX - minX;
  const dy = maxY - minY;
  const sx = (width - 2 * margin) / (dx || 1);
  const sy = (height - 2 * margin) / (dy || 1);
  const scale = Math.min(sx, sy);
  return {
    scale,
    tx: width / 2 - (scale * (minX + maxX)) / 2,
    ty: height / 2 + (scale * (minY + maxY)) / 2,
  };
}

export function clampToCanvas(
  s: [number, number],
  width: number,
  height: number,
): [number, number] {
  return [
    Math.min(Math.max(s[0], 0), width),
    Math.min(Math.max(s[1], 0), height),
  ];
}

function segmentDistance(
  p: [number, number],
  a: [number, number],
  b: [number, number],
): number {
  const vx = b[0] - a[0];
  const vy = b[1] - a[1];
  const wx = p[0] - a[0];
  const wy = p[1] - a[1];
  const len2 = vx * vx + vy * vy;
  const u = len2 === 0 ? 0 : Math.min(Math.max((wx * vx + wy * vy) / len2, 0), 1);
  const dx = p[0] - (a[0] + u * vx);
  const dy = p[1] - (a[1] + u * vy);
  return Math.hypot(dx, dy);
}

/** Minimum distance in screen pixels from a world point to a polyline. */
export function distanceToPolylinePx(
  world: Vec,
  vertices: Vec[],
  closed: boolean,
  t: Transform,
): number {
  if (vertices.length === 0) {
    return Infinity;
  }
  const p = worldToScreen(world, t);
  let best = Infinity;
  const n = vertices.length;
  const last = closed ? n : n - 1;
  for (let i = 0; i < last; i++) {
    const a = worldToScreen(vertices[i]!, t);
    const b = worldToScreen(vertices[(i + 1) % n]!, t);
    best = Math.min(best, segmentDistance(p, a, b));
  }
  return best;
}

/** Nearest control point within radiusPx of the screen position, or null. */
export function hitTestPoint(
  screen: [number, number],
  netPoints: Vec[],
  t: Transform,
  radiusPx = 8,
): number | null {
  let best: number | null = null;
  let bestDist = radiusPx;
  for (let i = 0; i < netPoints.length; i++) {
    const s = worldToScreen(netPoints[i]!, t);
    const d = Math.hypot(s[0] - screen[0], s[1] - screen[1]);
    if (d <= bestDist) {
      best = i;
      bestDist = d;
    }
  }
  return best;
}
