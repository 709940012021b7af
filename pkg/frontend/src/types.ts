/** JSON payload shapes served by the editing service. */

export type Vec = number[];
export type Window = [number, number];
export type PointIndex = number | [number, number];

export interface AxisDocument {
  roots: [number, number][];
  density: number;
  periodic: boolean;
  domain: [number, number];
  scale: number;
  lambda: number[];
  condition_number: number;
}

export interface ResolutionRecord {
  factor: number;
  kind: "pre" | "mask";
}

export interface PresetInfo {
  name: string;
  params: Record<string, unknown>;
}

export interface ShapeDocument {
  kind: "shape";
  version: number;
  dims: 1 | 2;
  point_dim: number;
  shape: number[];
  /** curves: [n][d]; surfaces: [n1][n2][d] */
  points: unknown[];
  origins: number[];
  axes: AxisDocument[];
  resolution_history: ResolutionRecord[];
  preset: PresetInfo;
}

export interface AxisAnalysis {
  lambda: number[];
  condition_number: number;
  riesz: { lower: number; upper: number; grid_size: number };
}

export interface SessionPayload {
  session_id: string;
  revision: number;
  undo_depth: number;
  document: ShapeDocument;
  analysis: AxisAnalysis[];
  domain: Window[];
  /** present on point move responses */
  dirty?: Window[];
}

export interface CurveMeshPayload {
  session_id: string;
  revision: number;
  vertices: Vec[];
  closed: boolean;
}

export interface SurfaceMeshPayload {
  session_id: string;
  revision: number;
  vertices: Vec[];
  faces: number[][];
  grid_shape: [number, number];
}

export type MeshPayload = CurveMeshPayload | SurfaceMeshPayload;

export function isSurfaceMesh(mesh: MeshPayload): mesh is SurfaceMeshPayload {
  return "faces" in mesh;
}

export interface ErrorEnvelope {
  error: { code: string; message: string };
}
