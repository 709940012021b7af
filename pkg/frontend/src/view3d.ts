/** Orbitable 3D view: spherical camera, perspective projection, painter
 * ordering for opaque quads drawn on a 2D canvas. */

import type { Camera } from "./state.js";
import type { Vec } from "./types.js";

const PHI_LIMIT = Math.PI / 2 - 0.01;

export function orbit(camera: Camera, dTheta: number, dPhi: number): Camera {
  const theta = (camera.theta + dTheta) % (2 * Math.PI);
  const phi = Math.min(Math.max(camera.phi + dPhi, -PHI_LIMIT), PHI_LIMIT);
  return { ...camera, theta, phi };
}

export function zoom(camera: Camera, factor: number): Camera {
  return { ...camera, distance: Math.min(Math.max(camera.distance * factor, 0.5), 200) };
}

export function cameraPosition(camera: Camera): Vec {
  const cp = Math.cos(camera.phi);
  return [
    (camera.target[0] ?? 0) + camera.distance * cp * Math.cos(camera.theta),
    (camera.target[1] ?? 0) + camera.distance * cp * Math.sin(camera.theta),
    (camera.target[2] ?? 0) + camera.distance * Math.sin(camera.phi),
  ];
}

/** Camera-space depth and screen position; depth grows away from the eye. */
export function projectPoint(
  p: Vec,
  camera: Camera,
  width: number,
  height: number,
  fov = 1.0,
): { screen: [number, number]; depth: number } {
  const eye = cameraPosition(camera);
  // forward/right/up basis looking at the target, z-up world
  const f = normalize(sub(camera.target, eye));
  const r = normalize(cross(f, [0, 0, 1]));
  const u = cross(r, f);
  const d = sub(p, eye);
  const x = dot(d, r);
  const y = dot(d, u);
  const z = dot(d, f);
  const focal = (0.5 * Math.min(width, height)) / Math.tan(fov / 2);
  const safe = Math.max(z, 1e-6);
  return {
    screen: [width / 2 + (focal * x) / safe, height / 2 - (focal * y) / safe],
    depth: z,
  };
}

/** Face indices sorted back to front by mean vertex depth. */
export function paintOrder(
  faces: number[][],
  vertices: Vec[],
  camera: Camera,
): number[] {
  const eye = cameraPosition(camera);
  const f = normalize(sub(camera.target, eye));
  const depths = faces.map((face) => {
    let sum = 0;
    for (const vi of face) {
      sum += dot(sub(vertices[vi] ?? [0, 0, 0], eye), f);
    }
    return sum / (face.length || 1);
  });
  return faces
    .map((_, i) => i)
    .sort((a, b) => depths[b]! - depths[a]!);
}

function sub(a: Vec, b: Vec): Vec {
  return [(a[0] ?? 0) - (b[0] ?? 0), (a[1] ?? 0) - (b[1] ?? 0), (a[2] ?? 0) - (b[2] ?? 0)];
}

function dot(a: Vec, b: Vec): number {
  return (a[0] ?? 0) * (b[0] ?? 0) + (a[1] ?? 0) * (b[1] ?? 0) + (a[2] ?? 0) * (b[2] ?? 0);
}

function cross(a: Vec, b: Vec): Vec {
  return [
    (a[1] ?? 0) * (b[2] ?? 0) - (a[2] ?? 0) * (b[1] ?? 0),
    (a[2] ?? 0) * (b[0] ?? 0) - (a[0] ?? 0) * (b[2] ?? 0),
    (a[0] ?? 0) * (b[1] ?? 0) - (a[1] ?? 0) * (b[0] ?? 0),
  ];
}

function normalize(v: Vec): Vec {
  const n = Math.hypot(v[0] ?? 0, v[1] ?? 0, v[2] ?? 0) || 1;
  return [(v[0] ?? 0) / n, (v[1] ?? 0) / n, (v[2] ?? 0) / n];
}
