import { describe, expect, it } from "vitest";

import type { Camera } from "../src/state.js";
import type { SurfaceMeshPayload, Vec } from "../src/types.js";
import {
  clampToCanvas,
  distanceToPolylinePx,
  fitTransform,
  hitTestPoint,
  screenToWorld,
  worldToScreen,
} from "../src/view2d.js";
import {
  cameraPosition,
  orbit,
  paintOrder,
  projectPoint,
  zoom,
} from "../src/view3d.js";
import meshTorus from "./fixtures/mesh_torus.json";

const torusMesh = meshTorus as unknown as SurfaceMeshPayload;

describe("2d transform", () => {
  it("fits a unit square with uniform scale", () => {
    const t = fitTransform([[0, 0], [1, 1], [1, 0], [0, 1]], 100, 100, 10);
    expect(t.scale).toBeCloseTo(80, 12);
    expect(worldToScreen([0, 0], t)).toEqual([10, 90]);
    expect(worldToScreen([1, 1], t)).toEqual([90, 10]);
    expect(worldToScreen([0.5, 0.5], t)).toEqual([50, 50]);
  });

  it("round-trips world and screen coordinates", () => {
    const t = fitTransform([[-1, -1], [1, 1]], 900, 640);
    const p: Vec = [0.3, -0.7];
    const back = screenToWorld(worldToScreen(p, t), t);
    expect(back[0]).toBeCloseTo(p[0]!, 12);
    expect(back[1]).toBeCloseTo(p[1]!, 12);
  });

  it("centers a degenerate net", () => {
    const t = fitTransform([[2, 3]], 100, 100, 10);
    expect(worldToScreen([2, 3], t)).toEqual([50, 50]);
  });

  it("clamps screen positions to the canvas", () => {
    expect(clampToCanvas([-5, 700], 900, 640)).toEqual([0, 640]);
    expect(clampToCanvas([450, 320], 900, 640)).toEqual([450, 320]);
  });
});

describe("polyline distance", () => {
  const square: Vec[] = [[0, 0], [1, 0], [1, 1], [0, 1]];
  const t = { scale: 100, tx: 0, ty: 200 };

  it("measures perpendicular distance in pixels", () => {
    expect(distanceToPolylinePx([0.5, 0.5], square, true, t)).toBeCloseTo(50, 9);
    expect(distanceToPolylinePx([0.5, 0], square, true, t)).toBeCloseTo(0, 9);
    expect(distanceToPolylinePx([1, 1], square, true, t)).toBeCloseTo(0, 9);
  });

  it("includes the wrap segment only when closed", () => {
    // (0, 0.5) sits on the wrap segment from (0,1) back to (0,0)
    expect(distanceToPolylinePx([0, 0.5], square, true, t)).toBeCloseTo(0, 9);
    expect(distanceToPolylinePx([0, 0.5], square, false, t)).toBeCloseTo(50, 9);
  });

  it("measures to the nearest endpoint beyond a segment", () => {
    const open: Vec[] = [[0, 0], [1, 0]];
    expect(distanceToPolylinePx([2, 0], open, false, t)).toBeCloseTo(100, 9);
  });
});

describe("hit testing", () => {
  const t = { scale: 100, tx: 0, ty: 200 };
  const net: Vec[] = [[0, 0], [1, 0], [1, 1]];

  it("selects the nearest point within the radius", () => {
    expect(hitTestPoint([105, 195], net, t)).toBe(1);
    expect(hitTestPoint([98, 102], net, t)).toBe(2);
  });

  it("returns null when nothing is close enough", () => {
    expect(hitTestPoint([50, 150], net, t)).toBeNull();
  });
});

describe("3d camera", () => {
  const camera: Camera = { theta: 0, phi: 0, distance: 5, target: [0, 0, 0] };

  it("places the eye on a z-up sphere", () => {
    const eye = cameraPosition(camera);
    expect(eye[0]).toBeCloseTo(5, 12);
    expect(eye[1]).toBeCloseTo(0, 12);
    expect(eye[2]).toBeCloseTo(0, 12);
    const above = cameraPosition({ ...camera, phi: Math.PI / 2 - 0.01 });
    expect(above[2]).toBeGreaterThan(4.9);
  });

  it("projects the target to the canvas center", () => {
    const { screen, depth } = projectPoint([0, 0, 0], camera, 200, 100);
    expect(screen[0]).toBeCloseTo(100, 9);
    expect(screen[1]).toBeCloseTo(50, 9);
    expect(depth).toBeCloseTo(5, 12);
  });

  it("maps world axes to screen directions", () => {
    const right = projectPoint([0, 1, 0], camera, 200, 100);
    expect(right.screen[0]).toBeGreaterThan(100);
    expect(right.screen[1]).toBeCloseTo(50, 9);
    const up = projectPoint([0, 0, 1], camera, 200, 100);
    expect(up.screen[1]).toBeLessThan(50);
    const closer = projectPoint([1, 0, 0], camera, 200, 100);
    expect(closer.depth).toBeCloseTo(4, 12);
  });

  it("clamps pitch and wraps yaw on orbit", () => {
    const high = orbit(camera, 0, 10);
    expect(high.phi).toBeCloseTo(Math.PI / 2 - 0.01, 12);
    const low = orbit(camera, 0, -10);
    expect(low.phi).toBeCloseTo(-(Math.PI / 2 - 0.01), 12);
    const spun = orbit({ ...camera, theta: Math.PI }, 1.5 * Math.PI, 0);
    expect(spun.theta).toBeCloseTo(Math.PI / 2, 12);
  });

  it("clamps zoom distance", () => {
    expect(zoom(camera, 0.5).distance).toBeCloseTo(2.5, 12);
    expect(zoom(camera, 1e-9).distance).toBe(0.5);
    expect(zoom(camera, 1e9).distance).toBe(200);
  });

  it("sorts faces back to front", () => {
    const vertices: Vec[] = [[1, 0, 0], [-1, 0, 0]];
    const faces = [[0], [1]];
    expect(paintOrder(faces, vertices, camera)).toEqual([1, 0]);
  });

  it("projects a full surface mesh to finite screen positions", () => {
    const view: Camera = { theta: 0.6, phi: 0.4, distance: 8, target: [0, 0, 0] };
    for (const v of torusMesh.vertices) {
      const { screen, depth } = projectPoint(v, view, 900, 640);
      expect(Number.isFinite(screen[0])).toBe(true);
      expect(Number.isFinite(screen[1])).toBe(true);
      expect(depth).toBeGreaterThan(0);
    }
  });
});
