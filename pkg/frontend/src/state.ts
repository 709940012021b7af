/** Editor state and its transitions.
 *
 * The local control net always mirrors the last server response; a drag in
 * progress overlays an optimistic preview on top of it. The tessellation
 * cache is reconciled against dirty parameter ranges: vertices outside the
 * reported windows keep their existing values (and array identity), so a
 * local edit never repaints distant geometry.
 */

import {
  coefficientParam,
  coefficientWindow,
  inWindow,
  vertexParams,
  wrappedDistance,
} from "./params.js";
import type {
  MeshPayload,
  PointIndex,
  SessionPayload,
  ShapeDocument,
  Vec,
  Window,
} from "./types.js";
import { isSurfaceMesh } from "./types.js";

export interface Camera {
  theta: number;
  phi: number;
  distance: number;
  target: Vec;
}

export type View =
  | { kind: "2d" }
  | { kind: "3d"; camera: Camera };

export interface MeshCache {
  vertices: Vec[];
  /** normalized parameter of each vertex along axis 0 (curves) */
  params: number[];
  samples: number;
  closed: boolean;
  faces: number[][] | null;
  gridShape: [number, number] | null;
}

interface DragPreview {
  index: number;
  baseNetPoint: Vec;
  baseVertices: Vec[];
  current: Vec;
}

export interface EditorState {
  sessionId: string;
  revision: number;
  undoDepth: number;
  doc: ShapeDocument;
  /** flat row-major copy of the control net, mirroring the server */
  netPoints: Vec[];
  netShape: number[];
  selected: number | null;
  view: View;
  mesh: MeshCache | null;
  /** windows reported by the latest move, consumed by mesh reconciliation */
  dirty: Window[] | null;
  dragging: DragPreview | null;
}

export function flattenPoints(doc: ShapeDocument): Vec[] {
  if (doc.dims === 1) {
    return (doc.points as Vec[]).map((p) => p.slice());
  }
  const rows = doc.points as Vec[][];
  const out: Vec[] = [];
  for (const row of rows) {
    for (const p of row) {
      out.push(p.slice());
    }
  }
  return out;
}

export function netShape(doc: ShapeDocument): number[] {
  if (doc.dims === 1) {
    return [(doc.points as Vec[]).length];
  }
  const rows = doc.points as Vec[][];
  return [rows.length, rows[0]?.length ?? 0];
}

export function flatToIndex(state: EditorState, flat: number): PointIndex {
  if (state.doc.dims === 1) {
    return flat;
  }
  const cols = state.netShape[1] ?? 1;
  return [Math.floor(flat / cols), flat % cols];
}

function defaultView(doc: ShapeDocument): View {
  if (doc.dims === 1) {
    return { kind: "2d" };
  }
  return {
    kind: "3d",
    camera: { theta: 0.6, phi: 0.4, distance: 8, target: [0, 0, 0] },
  };
}

export function fromSession(payload: SessionPayload): EditorState {
  return {
    sessionId: payload.session_id,
    revision: payload.revision,
    undoDepth: payload.undo_depth,
    doc: payload.document,
    netPoints: flattenPoints(payload.document),
    netShape: netShape(payload.document),
    selected: null,
    view: defaultView(payload.document),
    mesh: null,
    dirty: payload.dirty ?? null,
    dragging: null,
  };
}

/** Reconcile with a server response;  the net always mirrors the server. */
export function applySession(
  state: EditorState,
  payload: SessionPayload,
): EditorState {
  const dimsChanged = payload.document.dims !== state.doc.dims;
  return {
    ...state,
    revision: payload.revision,
    undoDepth: payload.undo_depth,
    doc: payload.document,
    netPoints: flattenPoints(payload.document),
    netShape: netShape(payload.document),
    view: dimsChanged ? defaultView(payload.document) : state.view,
    dirty: payload.dirty ?? null,
    dragging: null,
  };
}

export function meshFromPayload(
  payload: MeshPayload,
  samples: number,
  domain: Window,
): MeshCache {
  if (isSurfaceMesh(payload)) {
    return {
      vertices: payload.vertices,
      params: [],
      samples,
      closed: false,
      faces: payload.faces,
      gridShape: payload.grid_shape,
    };
  }
  return {
    vertices: payload.vertices,
    params: vertexParams(payload.vertices.length, domain, payload.closed),
    samples,
    closed: payload.closed,
    faces: null,
    gridShape: null,
  };
}

/** Install a fresh mesh, replacing only vertices inside the dirty windows.
 *
 * Vertices outside every window keep their previous array objects. A
 * count or topology change (refinement, samples change) replaces the whole
 * cache instead.
 */
export function reconcileMesh(
  state: EditorState,
  payload: MeshPayload,
  windows: Window[] | null,
): EditorState {
  const axis = state.doc.axes[0];
  if (!axis) {
    throw new Error("document has no axes");
  }
  const domain: Window = [0, 1];
  const fresh = meshFromPayload(payload, state.mesh?.samples ?? 8, domain);
  const old = state.mesh;
  if (
    !old ||
    !windows ||
    windows.length === 0 ||
    old.vertices.length !== fresh.vertices.length ||
    old.faces !== null ||
    fresh.faces !== null
  ) {
    return { ...state, mesh: fresh };
  }
  const vertices = old.vertices.slice();
  for (let i = 0; i < vertices.length; i++) {
    const t = fresh.params[i]!;
    if (windows.some((w) => inWindow(t, w, domain, old.closed))) {
      vertices[i] = fresh.vertices[i]!;
    }
  }
  return { ...state, mesh: { ...fresh, vertices } };
}

export function beginDrag(state: EditorState, flat: number): EditorState {
  const point = state.netPoints[flat];
  if (!point) {
    return state;
  }
  return {
    ...state,
    selected: flat,
    dragging: {
      index: flat,
      baseNetPoint: point.slice(),
      baseVertices: state.mesh ? state.mesh.vertices : [],
      current: point.slice(),
    },
  };
}

/** Optimistic preview: the dragged net point follows the pointer and, for
 * curves, cached vertices inside the edit window are displaced with a
 * smooth falloff. The dragged sample itself receives the full displacement,
 * so at interpolatory resolution the previewed curve passes through the
 * pointer. Authoritative geometry always comes back from the service.
 */
export function previewDrag(state: EditorState, world: Vec): EditorState {
  const drag = state.dragging;
  if (!drag) {
    return state;
  }
  const netPoints = state.netPoints.slice();
  netPoints[drag.index] = world.slice();
  const next: EditorState = {
    ...state,
    netPoints,
    dragging: { ...drag, current: world.slice() },
  };
  const axis = state.doc.axes[0];
  if (state.doc.dims !== 1 || !state.mesh || !axis) {
    return next;
  }
  const origin = state.doc.origins[0] ?? 0;
  const window = coefficientWindow(axis, drag.index, origin);
  const center =
    axis.scale === 1
      ? coefficientParam(axis, drag.index, origin)
      : (window[0] + window[1]) / 2;
  const halfwidth = (window[1] - window[0]) / 2 || 1e-9;
  const delta = world.map((x, d) => x - (drag.baseNetPoint[d] ?? 0));
  const domain: Window = [0, 1];
  const vertices = drag.baseVertices.slice();
  for (let i = 0; i < vertices.length; i++) {
    const t = state.mesh.params[i]!;
    if (!inWindow(t, window, domain, state.mesh.closed)) {
      continue;
    }
    const d = wrappedDistance(t, center, domain, state.mesh.closed);
    const w = 0.5 * (1 + Math.cos((Math.PI * Math.min(d / halfwidth, 1))));
    vertices[i] = vertices[i]!.map((x, dim) => x + w * (delta[dim] ?? 0));
  }
  next.mesh = { ...state.mesh, vertices };
  return next;
}

export interface DragResult {
  state: EditorState;
  index: PointIndex;
  position: Vec;
}

/** Finish a drag: returns the move to submit; the preview stays on screen
 * until the server response reconciles it. */
export function endDrag(state: EditorState): DragResult | null {
  const drag = state.dragging;
  if (!drag) {
    return null;
  }
  return {
    state: { ...state, dragging: null },
    index: flatToIndex(state, drag.index),
    position: drag.current.slice(),
  };
}
