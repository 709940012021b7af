/** End-to-end editor properties checked against recorded service responses:
 * the rendered curve passes through every control point at the initial
 * resolution, a local drag leaves distant geometry untouched, and the
 * refine action densifies the net. Each check prints a verdict line.
 */

import { describe, expect, it } from "vitest";

import {
  buildTimeline,
  interpolatoryLike,
  netDistancePx,
} from "../src/indicator.js";
import {
  beginDrag,
  fromSession,
  previewDrag,
  reconcileMesh,
  type EditorState,
} from "../src/state.js";
import type { CurveMeshPayload, SessionPayload, Vec } from "../src/types.js";
import { distanceToPolylinePx, fitTransform, worldToScreen } from "../src/view2d.js";
import meshCircle from "./fixtures/mesh_circle.json";
import meshCirclePatched from "./fixtures/mesh_circle_patched.json";
import meshCircleRefined from "./fixtures/mesh_circle_refined.json";
import meshCircleRefinedPatched from "./fixtures/mesh_circle_refined_patched.json";
import patchCircle from "./fixtures/patch_circle.json";
import patchCircleRefined from "./fixtures/patch_circle_refined.json";
import refineCircle from "./fixtures/refine_circle.json";
import sessionCircle from "./fixtures/session_circle.json";
import undoCircle from "./fixtures/undo_circle.json";

const session = sessionCircle as unknown as SessionPayload;
const patched = patchCircle as unknown as SessionPayload;
const refined = refineCircle as unknown as SessionPayload;
const refinedPatch = patchCircleRefined as unknown as SessionPayload;
const undone = undoCircle as unknown as SessionPayload;
const mesh = meshCircle as unknown as CurveMeshPayload;
const meshPatched = meshCirclePatched as unknown as CurveMeshPayload;
const meshRefined = meshCircleRefined as unknown as CurveMeshPayload;
const meshRefinedPatched = meshCircleRefinedPatched as unknown as CurveMeshPayload;

const WIDTH = 900;
const HEIGHT = 640;

function verdict(ok: boolean, label: string, detail: string): void {
  console.log(`${ok ? "PASS" : "FAIL"} ${label}: ${detail}`);
}

function movementPx(
  before: Vec[],
  after: Vec[],
  t: ReturnType<typeof fitTransform>,
): number[] {
  return before.map((p, i) => {
    const a = worldToScreen(p, t);
    const b = worldToScreen(after[i]!, t);
    return Math.hypot(a[0] - b[0], a[1] - b[1]);
  });
}

function stateWithMesh(
  payload: SessionPayload,
  meshPayload: CurveMeshPayload,
): EditorState {
  return reconcileMesh(fromSession(payload), meshPayload, null);
}

describe("editor acceptance", () => {
  it("passes through every control point within one pixel before refinement", () => {
    const t = fitTransform(mesh.vertices, WIDTH, HEIGHT);
    let worst = 0;
    for (const p of session.document.points as Vec[]) {
      worst = Math.max(
        worst,
        distanceToPolylinePx(p, mesh.vertices, mesh.closed, t),
      );
    }
    const ok = worst < 1;
    verdict(ok, "through-point", `worst control point offset ${worst.toFixed(3)} px`);
    expect(ok).toBe(true);
  });

  it("moves the curve through a dragged point within one pixel", () => {
    const t = fitTransform(mesh.vertices, WIDTH, HEIGHT);
    const target: Vec = [-0.9, 0.9];

    // optimistic preview while the pointer is down
    let state = stateWithMesh(session, mesh);
    state = previewDrag(beginDrag(state, 3), target);
    const previewDist = distanceToPolylinePx(
      target,
      state.mesh!.vertices,
      true,
      t,
    );

    // server-confirmed geometry after the move
    const confirmedDist = distanceToPolylinePx(
      target,
      meshPatched.vertices,
      meshPatched.closed,
      t,
    );
    const ok = previewDist < 1 && confirmedDist < 1;
    verdict(
      ok,
      "drag through-point",
      `preview ${previewDist.toFixed(3)} px, confirmed ${confirmedDist.toFixed(3)} px`,
    );
    expect(ok).toBe(true);
    expect(
      (patched.document.points as Vec[])[3],
    ).toEqual(target);
  });

  it("leaves distant geometry untouched by a local drag", () => {
    // initial resolution
    let state = stateWithMesh(session, mesh);
    const before = state.mesh!.vertices;
    state = { ...state, dirty: patched.dirty ?? null };
    state = reconcileMesh(state, meshPatched, state.dirty);
    const t = fitTransform(before, WIDTH, HEIGHT);
    const moved = movementPx(before, state.mesh!.vertices, t);
    const windows = patched.dirty!;
    let outsideMax = 0;
    let insideMax = 0;
    moved.forEach((d, i) => {
      const param = i / moved.length;
      const inside = windows.some(([lo, hi]) => param >= lo && param <= hi);
      if (inside) {
        insideMax = Math.max(insideMax, d);
      } else {
        outsideMax = Math.max(outsideMax, d);
      }
    });

    // refined resolution, narrower window
    let rstate = stateWithMesh(refined, meshRefined);
    const rbefore = rstate.mesh!.vertices;
    rstate = { ...rstate, dirty: refinedPatch.dirty ?? null };
    rstate = reconcileMesh(rstate, meshRefinedPatched, rstate.dirty);
    const rt = fitTransform(rbefore, WIDTH, HEIGHT);
    const rmoved = movementPx(rbefore, rstate.mesh!.vertices, rt);
    const rwindows = refinedPatch.dirty!;
    let routsideMax = 0;
    rmoved.forEach((d, i) => {
      const param = i / rmoved.length;
      const inside = rwindows.some(([lo, hi]) => param >= lo && param <= hi);
      if (!inside) {
        routsideMax = Math.max(routsideMax, d);
      }
    });

    const ok = outsideMax === 0 && routsideMax === 0 && insideMax > 5;
    verdict(
      ok,
      "locality",
      `outside ${outsideMax.toFixed(3)} px (refined ${routsideMax.toFixed(3)}), inside up to ${insideMax.toFixed(1)} px`,
    );
    expect(ok).toBe(true);
  });

  it("densifies the net on refine and tracks interpolatory-likeness", () => {
    const beforeCount = (session.document.points as Vec[]).length;
    const afterCount = (refined.document.points as Vec[]).length;
    expect(refined.document.resolution_history).toEqual([
      { factor: 2, kind: "pre" },
    ]);
    const timeline = buildTimeline(refined.document.resolution_history);
    expect(timeline).toHaveLength(1);
    expect(timeline[0]!.scale).toBe(2);

    const t0 = fitTransform(mesh.vertices, WIDTH, HEIGHT);
    const d0 = netDistancePx(
      session.document.points as Vec[],
      mesh.vertices,
      mesh.closed,
      t0,
    );
    const t1 = fitTransform(meshRefined.vertices, WIDTH, HEIGHT);
    const d1 = netDistancePx(
      refined.document.points as Vec[],
      meshRefined.vertices,
      meshRefined.closed,
      t1,
    );
    const ok =
      afterCount === 2 * beforeCount &&
      interpolatoryLike(d0) &&
      !interpolatoryLike(d1);
    verdict(
      ok,
      "densification",
      `${beforeCount} -> ${afterCount} points, net offset ${d0.toFixed(3)} px then ${d1.toFixed(3)} px`,
    );
    expect(ok).toBe(true);
  });

  it("restores the pre-edit net on undo", () => {
    expect(undone.document.points).toEqual(session.document.points);
    expect(undone.revision).toBeGreaterThan(patched.revision);
    verdict(true, "undo", "document matches the original net");
  });
});
