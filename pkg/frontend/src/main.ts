/** Browser entry point: wires the canvas, toolbar, and service client.
 *
 * All geometry comes from the HTTP service; this module only draws it and
 * translates pointer gestures into API calls. Curves render on a 2D canvas,
 * surfaces in an orbitable perspective view. One mutation is in flight at a
 * time; extra edits queue up in order.
 */

import { ApiClient, ApiError } from "./api.js";
import { MutationQueue } from "./queue.js";
import {
  applySession,
  beginDrag,
  endDrag,
  fromSession,
  meshFromPayload,
  previewDrag,
  reconcileMesh,
  type EditorState,
} from "./state.js";
import {
  buildTimeline,
  interpolatoryLike,
  netDistancePx,
  netDistanceToVerticesPx,
  INTERPOLATORY_THRESHOLD_PX,
} from "./indicator.js";
import {
  clampToCanvas,
  fitTransform,
  hitTestPoint,
  screenToWorld,
  worldToScreen,
  type Transform,
} from "./view2d.js";
import { cameraPosition, orbit, paintOrder, projectPoint, zoom } from "./view3d.js";
import type { Vec } from "./types.js";

const MESH_SAMPLES = 16;

function el<T extends HTMLElement>(id: string): T {
  const node = document.getElementById(id);
  if (!node) {
    throw new Error(`missing element #${id}`);
  }
  return node as T;
}

const canvas = el<HTMLCanvasElement>("canvas");
const ctx = canvas.getContext("2d")!;
const presetSelect = el<HTMLSelectElement>("preset");
const refineButton = el<HTMLButtonElement>("refine");
const factorSelect = el<HTMLSelectElement>("factor");
const undoButton = el<HTMLButtonElement>("undo");
const statusLine = el<HTMLDivElement>("status");
const indicatorBadge = el<HTMLSpanElement>("indicator");
const timelineList = el<HTMLUListElement>("timeline");
const errorBox = el<HTMLDivElement>("errors");

const apiBase =
  new URLSearchParams(location.search).get("api") ?? "http://127.0.0.1:8720";
const api = new ApiClient(apiBase);
const queue = new MutationQueue();

let state: EditorState | null = null;
let orbiting: { x: number; y: number } | null = null;

function showError(err: unknown): void {
  const text =
    err instanceof ApiError ? `${err.code}: ${err.message}` : String(err);
  errorBox.textContent = text;
  errorBox.style.display = "block";
  setTimeout(() => {
    errorBox.style.display = "none";
  }, 4000);
}

async function refreshMesh(windows: [number, number][] | null): Promise<void> {
  if (!state) {
    return;
  }
  const payload = await api.mesh(state.sessionId, MESH_SAMPLES);
  if (state.mesh) {
    state = reconcileMesh(state, payload, windows);
  } else {
    state = { ...state, mesh: meshFromPayload(payload, MESH_SAMPLES, [0, 1]) };
  }
  render();
}

async function openSession(preset: string): Promise<void> {
  try {
    const payload = await api.createSession(preset);
    state = fromSession(payload);
    await refreshMesh(null);
  } catch (err) {
    showError(err);
  }
}

function transform2d(): Transform {
  const pts = state?.mesh?.vertices.length
    ? state.mesh.vertices
    : state?.netPoints ?? [];
  return fitTransform(pts, canvas.width, canvas.height);
}

function render(): void {
  ctx.clearRect(0, 0, canvas.width, canvas.height);
  if (!state) {
    return;
  }
  if (state.doc.dims === 1) {
    renderCurve();
  } else {
    renderSurface();
  }
  renderChrome();
}

function renderCurve(): void {
  if (!state) {
    return;
  }
  const t = transform2d();
  const mesh = state.mesh;
  if (mesh && mesh.vertices.length > 1) {
    ctx.beginPath();
    mesh.vertices.forEach((v, i) => {
      const [x, y] = worldToScreen(v, t);
      if (i === 0) {
        ctx.moveTo(x, y);
      } else {
        ctx.lineTo(x, y);
      }
    });
    if (mesh.closed) {
      ctx.closePath();
    }
    ctx.strokeStyle = "#2563eb";
    ctx.lineWidth = 2;
    ctx.stroke();
  }
  state.netPoints.forEach((p, i) => {
    const [x, y] = worldToScreen(p, t);
    ctx.beginPath();
    ctx.arc(x, y, i === state!.selected ? 6 : 4, 0, 2 * Math.PI);
    ctx.fillStyle = i === state!.selected ? "#dc2626" : "#111827";
    ctx.fill();
  });
}

function renderSurface(): void {
  if (!state || state.view.kind !== "3d") {
    return;
  }
  const camera = state.view.camera;
  const mesh = state.mesh;
  if (mesh?.faces && mesh.gridShape) {
    const order = paintOrder(mesh.faces, mesh.vertices, camera);
    for (const fi of order) {
      const face = mesh.faces[fi]!;
      ctx.beginPath();
      face.forEach((vi, j) => {
        const { screen } = projectPoint(
          mesh.vertices[vi]!,
          camera,
          canvas.width,
          canvas.height,
        );
        if (j === 0) {
          ctx.moveTo(screen[0], screen[1]);
        } else {
          ctx.lineTo(screen[0], screen[1]);
        }
      });
      ctx.closePath();
      ctx.fillStyle = "rgba(37, 99, 235, 0.10)";
      ctx.strokeStyle = "rgba(37, 99, 235, 0.45)";
      ctx.lineWidth = 1;
      ctx.fill();
      ctx.stroke();
    }
  }
  state.netPoints.forEach((p, i) => {
    const { screen, depth } = projectPoint(
      p,
      camera,
      canvas.width,
      canvas.height,
    );
    if (depth <= 0) {
      return;
    }
    ctx.beginPath();
    ctx.arc(screen[0], screen[1], i === state!.selected ? 5 : 3, 0, 2 * Math.PI);
    ctx.fillStyle = i === state!.selected ? "#dc2626" : "#111827";
    ctx.fill();
  });
}

function renderChrome(): void {
  if (!state) {
    return;
  }
  const axis = state.doc.axes[0];
  const scale = state.doc.axes.map((a) => a.scale).join("x");
  statusLine.textContent =
    `revision ${state.revision} | ${state.netPoints.length} control points | ` +
    `grid scale ${scale} | condition ${axis ? axis.condition_number.toFixed(2) : "?"} | ` +
    `undo depth ${state.undoDepth} | queued edits ${queue.size}`;

  let distance = Infinity;
  if (state.doc.dims === 1 && state.mesh) {
    distance = netDistancePx(
      state.netPoints,
      state.mesh.vertices,
      state.mesh.closed,
      transform2d(),
    );
  } else if (state.view.kind === "3d" && state.mesh) {
    const cam = state.view.camera;
    const project = (p: Vec) =>
      projectPoint(p, cam, canvas.width, canvas.height).screen;
    distance = netDistanceToVerticesPx(
      state.netPoints.map(project),
      state.mesh.vertices.map(project),
    );
  }
  const like = interpolatoryLike(distance);
  indicatorBadge.textContent = like
    ? `interpolatory-like (${distance.toFixed(2)} px)`
    : `cage ${distance.toFixed(1)} px from shape`;
  indicatorBadge.className = like ? "badge on" : "badge off";

  const entries = buildTimeline(state.doc.resolution_history);
  timelineList.innerHTML = "";
  const first = document.createElement("li");
  first.textContent = "initial net (interpolatory)";
  timelineList.appendChild(first);
  for (const entry of entries) {
    const li = document.createElement("li");
    li.textContent = `step ${entry.step}: ${entry.label} (grid scale ${entry.scale})`;
    timelineList.appendChild(li);
  }
}

function submitMove(index: ReturnType<typeof endDrag>): void {
  if (!index || !state) {
    return;
  }
  state = index.state;
  queue
    .run(async () => {
      const payload = await api.movePoint(
        state!.sessionId,
        index.index,
        index.position,
      );
      state = applySession(state!, payload);
      await refreshMesh(payload.dirty ?? null);
    })
    .catch(showError);
}

function surfaceDragDelta(
  dxPx: number,
  dyPx: number,
  point: Vec,
): Vec {
  if (!state || state.view.kind !== "3d") {
    return [0, 0, 0];
  }
  const camera = state.view.camera;
  const eye = cameraPosition(camera);
  const depth = Math.hypot(
    (point[0] ?? 0) - (eye[0] ?? 0),
    (point[1] ?? 0) - (eye[1] ?? 0),
    (point[2] ?? 0) - (eye[2] ?? 0),
  );
  const focal = (0.5 * Math.min(canvas.width, canvas.height)) / Math.tan(0.5);
  const k = depth / focal;
  // move in the camera plane: right and up vectors of the view basis
  const f = norm3(sub3(camera.target, eye));
  const r = norm3(cross3(f, [0, 0, 1]));
  const u = cross3(r, f);
  return [
    dxPx * k * (r[0] ?? 0) - dyPx * k * (u[0] ?? 0),
    dxPx * k * (r[1] ?? 0) - dyPx * k * (u[1] ?? 0),
    dxPx * k * (r[2] ?? 0) - dyPx * k * (u[2] ?? 0),
  ];
}

const sub3 = (a: Vec, b: Vec): Vec =>
  [0, 1, 2].map((i) => (a[i] ?? 0) - (b[i] ?? 0));
const cross3 = (a: Vec, b: Vec): Vec => [
  (a[1] ?? 0) * (b[2] ?? 0) - (a[2] ?? 0) * (b[1] ?? 0),
  (a[2] ?? 0) * (b[0] ?? 0) - (a[0] ?? 0) * (b[2] ?? 0),
  (a[0] ?? 0) * (b[1] ?? 0) - (a[1] ?? 0) * (b[0] ?? 0),
];
const norm3 = (v: Vec): Vec => {
  const n = Math.hypot(v[0] ?? 0, v[1] ?? 0, v[2] ?? 0) || 1;
  return [(v[0] ?? 0) / n, (v[1] ?? 0) / n, (v[2] ?? 0) / n];
};

let lastPointer: { x: number; y: number } | null = null;

canvas.addEventListener("pointerdown", (ev) => {
  if (!state) {
    return;
  }
  const pos: [number, number] = [ev.offsetX, ev.offsetY];
  lastPointer = { x: pos[0], y: pos[1] };
  let hit: number | null = null;
  if (state.doc.dims === 1) {
    hit = hitTestPoint(pos, state.netPoints, transform2d());
  } else if (state.view.kind === "3d") {
    const cam = state.view.camera;
    let best = 10;
    state.netPoints.forEach((p, i) => {
      const { screen, depth } = projectPoint(p, cam, canvas.width, canvas.height);
      if (depth <= 0) {
        return;
      }
      const d = Math.hypot(screen[0] - pos[0], screen[1] - pos[1]);
      if (d < best) {
        best = d;
        hit = i;
      }
    });
  }
  if (hit !== null) {
    state = beginDrag(state, hit);
    canvas.setPointerCapture(ev.pointerId);
  } else if (state.view.kind === "3d") {
    orbiting = { x: pos[0], y: pos[1] };
    canvas.setPointerCapture(ev.pointerId);
  }
  render();
});

canvas.addEventListener("pointermove", (ev) => {
  if (!state) {
    return;
  }
  const clamped = clampToCanvas(
    [ev.offsetX, ev.offsetY],
    canvas.width,
    canvas.height,
  );
  if (state.dragging) {
    if (state.doc.dims === 1) {
      state = previewDrag(state, screenToWorld(clamped, transform2d()));
    } else if (lastPointer) {
      const moved = state.netPoints[state.dragging.index]!;
      const delta = surfaceDragDelta(
        clamped[0] - lastPointer.x,
        clamped[1] - lastPointer.y,
        moved,
      );
      state = previewDrag(
        state,
        moved.map((x, i) => x + (delta[i] ?? 0)),
      );
    }
    render();
  } else if (orbiting && state.view.kind === "3d") {
    const camera = orbit(
      state.view.camera,
      -(clamped[0] - orbiting.x) * 0.01,
      (clamped[1] - orbiting.y) * 0.01,
    );
    state = { ...state, view: { kind: "3d", camera } };
    orbiting = { x: clamped[0], y: clamped[1] };
    render();
  }
  lastPointer = { x: clamped[0], y: clamped[1] };
});

canvas.addEventListener("pointerup", () => {
  orbiting = null;
  if (state?.dragging) {
    submitMove(endDrag(state));
    render();
  }
});

canvas.addEventListener("wheel", (ev) => {
  if (state?.view.kind === "3d") {
    ev.preventDefault();
    const camera = zoom(state.view.camera, ev.deltaY > 0 ? 1.1 : 0.9);
    state = { ...state, view: { kind: "3d", camera } };
    render();
  }
});

refineButton.addEventListener("click", () => {
  if (!state) {
    return;
  }
  const factor = Number(factorSelect.value);
  queue
    .run(async () => {
      const payload = await api.refine(state!.sessionId, factor);
      state = applySession(state!, payload);
      await refreshMesh(null);
    })
    .catch(showError);
});

undoButton.addEventListener("click", () => {
  if (!state) {
    return;
  }
  queue
    .run(async () => {
      const payload = await api.undo(state!.sessionId);
      state = applySession(state!, payload);
      await refreshMesh(null);
    })
    .catch(showError);
});

presetSelect.addEventListener("change", () => {
  void openSession(presetSelect.value);
});

async function start(): Promise<void> {
  try {
    const { presets } = await api.presets();
    presetSelect.innerHTML = "";
    for (const name of presets) {
      const opt = document.createElement("option");
      opt.value = name;
      opt.textContent = name;
      presetSelect.appendChild(opt);
    }
    presetSelect.value = presets.includes("circle") ? "circle" : presets[0] ?? "";
    await openSession(presetSelect.value);
  } catch (err) {
    showError(err);
  }
}

void start();

export { INTERPOLATORY_THRESHOLD_PX };
