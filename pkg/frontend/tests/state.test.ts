import { describe, expect, it } from "vitest";

import {
  applySession,
  beginDrag,
  endDrag,
  flatToIndex,
  fromSession,
  meshFromPayload,
  previewDrag,
  reconcileMesh,
  type EditorState,
} from "../src/state.js";
import type {
  CurveMeshPayload,
  SessionPayload,
  SurfaceMeshPayload,
} from "../src/types.js";
import meshCircle from "./fixtures/mesh_circle.json";
import meshCirclePatched from "./fixtures/mesh_circle_patched.json";
import meshTorus from "./fixtures/mesh_torus.json";
import patchCircle from "./fixtures/patch_circle.json";
import sessionCircle from "./fixtures/session_circle.json";
import sessionTorus from "./fixtures/session_torus.json";

const circleSession = sessionCircle as unknown as SessionPayload;
const torusSession = sessionTorus as unknown as SessionPayload;
const circlePatch = patchCircle as unknown as SessionPayload;
const circleMesh = meshCircle as unknown as CurveMeshPayload;
const circleMeshPatched = meshCirclePatched as unknown as CurveMeshPayload;
const torusMesh = meshTorus as unknown as SurfaceMeshPayload;

function withMesh(state: EditorState, mesh: CurveMeshPayload): EditorState {
  return reconcileMesh(state, mesh, null);
}

describe("fromSession", () => {
  it("mirrors a curve net", () => {
    const state = fromSession(circleSession);
    expect(state.netPoints).toHaveLength(8);
    expect(state.netShape).toEqual([8]);
    expect(state.netPoints[3]).toEqual(circleSession.document.points[3]);
    expect(state.view.kind).toBe("2d");
    expect(state.revision).toBe(0);
    expect(state.dragging).toBeNull();
  });

  it("flattens a surface net row-major", () => {
    const state = fromSession(torusSession);
    expect(state.netShape).toEqual([8, 6]);
    expect(state.netPoints).toHaveLength(48);
    const rows = torusSession.document.points as number[][][];
    expect(state.netPoints[15]).toEqual(rows[2]![3]);
    expect(state.view.kind).toBe("3d");
    expect(flatToIndex(state, 15)).toEqual([2, 3]);
    expect(flatToIndex(state, 0)).toEqual([0, 0]);
    expect(flatToIndex(state, 47)).toEqual([7, 5]);
  });

  it("keeps curve indices flat", () => {
    const state = fromSession(circleSession);
    expect(flatToIndex(state, 3)).toBe(3);
  });
});

describe("applySession", () => {
  it("adopts the server net and dirty windows", () => {
    let state = fromSession(circleSession);
    state = applySession(state, circlePatch);
    expect(state.revision).toBe(1);
    expect(state.netPoints[3]).toEqual([-0.9, 0.9]);
    expect(state.dirty).toEqual([[0.125, 0.625]]);
    expect(state.dragging).toBeNull();
  });

  it("clears an in-flight drag", () => {
    let state = fromSession(circleSession);
    state = beginDrag(state, 3);
    expect(state.dragging).not.toBeNull();
    state = applySession(state, circlePatch);
    expect(state.dragging).toBeNull();
  });
});

describe("meshFromPayload", () => {
  it("assigns uniform closed-curve parameters", () => {
    const mesh = meshFromPayload(circleMesh, 16, [0, 1]);
    expect(mesh.params).toHaveLength(128);
    expect(mesh.params[0]).toBe(0);
    expect(mesh.params[48]).toBeCloseTo(48 / 128, 15);
    expect(mesh.closed).toBe(true);
    expect(mesh.faces).toBeNull();
  });

  it("keeps surface topology", () => {
    const mesh = meshFromPayload(torusMesh, 6, [0, 1]);
    expect(mesh.faces).not.toBeNull();
    expect(mesh.gridShape).toEqual([48, 36]);
    expect(mesh.vertices).toHaveLength(48 * 36);
  });
});

describe("reconcileMesh", () => {
  it("replaces only vertices inside the dirty windows", () => {
    let state = withMesh(fromSession(circleSession), circleMesh);
    const before = state.mesh!;
    state = applySession(state, circlePatch);
    state = reconcileMesh(state, circleMeshPatched, state.dirty);
    const after = state.mesh!;
    expect(after.vertices).toHaveLength(128);
    for (let i = 0; i < 128; i++) {
      const t = i / 128;
      const inside = t >= 0.125 && t <= 0.625;
      if (!inside) {
        expect(after.vertices[i]).toBe(before.vertices[i]);
      }
    }
    expect(after.vertices).toEqual(circleMeshPatched.vertices);
    expect(after.vertices[48]).not.toEqual(before.vertices[48]);
  });

  it("replaces everything when no windows are given", () => {
    let state = withMesh(fromSession(circleSession), circleMesh);
    state = reconcileMesh(state, circleMeshPatched, null);
    expect(state.mesh!.vertices).toBe(circleMeshPatched.vertices);
  });

  it("replaces everything when the vertex count changes", () => {
    let state = withMesh(fromSession(circleSession), circleMesh);
    const denser: CurveMeshPayload = {
      vertices: circleMesh.vertices.slice(0, 64),
      closed: true,
    };
    state = reconcileMesh(state, denser, [[0.125, 0.625]]);
    expect(state.mesh!.vertices).toHaveLength(64);
  });

  it("always replaces surface meshes wholesale", () => {
    let state = fromSession(torusSession);
    state = reconcileMesh(state, torusMesh, null);
    state = reconcileMesh(state, torusMesh, [[0, 0.1]]);
    expect(state.mesh!.vertices).toBe(torusMesh.vertices);
  });
});

describe("drag preview", () => {
  it("moves the dragged sample to the pointer and leaves far vertices alone", () => {
    let state = withMesh(fromSession(circleSession), circleMesh);
    const original = state.mesh!.vertices;
    state = beginDrag(state, 3);
    state = previewDrag(state, [-0.9, 0.9]);

    expect(state.netPoints[3]).toEqual([-0.9, 0.9]);
    const moved = state.mesh!.vertices[48]!;
    expect(moved[0]).toBeCloseTo(-0.9, 9);
    expect(moved[1]).toBeCloseTo(0.9, 9);

    for (let i = 0; i < 128; i++) {
      const t = i / 128;
      if (t < 0.125 || t > 0.625) {
        expect(state.mesh!.vertices[i]).toBe(original[i]);
      }
    }
  });

  it("recomputes each preview from the pre-drag mesh", () => {
    let state = withMesh(fromSession(circleSession), circleMesh);
    state = beginDrag(state, 3);
    state = previewDrag(state, [-2, 2]);
    state = previewDrag(state, [-0.9, 0.9]);
    const moved = state.mesh!.vertices[48]!;
    expect(moved[0]).toBeCloseTo(-0.9, 9);
    expect(moved[1]).toBeCloseTo(0.9, 9);
  });

  it("reports the move to submit on release", () => {
    let state = withMesh(fromSession(circleSession), circleMesh);
    state = beginDrag(state, 3);
    state = previewDrag(state, [-0.9, 0.9]);
    const done = endDrag(state);
    expect(done).not.toBeNull();
    expect(done!.index).toBe(3);
    expect(done!.position).toEqual([-0.9, 0.9]);
    expect(done!.state.dragging).toBeNull();
  });

  it("returns pair indices for surface drags", () => {
    let state = fromSession(torusSession);
    state = beginDrag(state, 15);
    state = previewDrag(state, [0, 0, 2]);
    const done = endDrag(state);
    expect(done!.index).toEqual([2, 3]);
    expect(done!.position).toEqual([0, 0, 2]);
  });

  it("ignores a release with no drag in progress", () => {
    const state = fromSession(circleSession);
    expect(endDrag(state)).toBeNull();
  });
});
