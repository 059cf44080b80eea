/** 4-D to 3-D projections of grids, mirroring the engine conventions.

Modeling space is (x, y, w).  DOP yields two images per point: the z-image
at (x, y, -z) and the w-image at (x, y, w); their (x, y) coordinates always
agree, which keeps the two viewer panels in lockstep.  Perspective projects
from (0, 0, d, 0); points with 0 < |z| <= epsilon are flagged clipped and
faces touching them are dropped, never extrapolated.
*/

import type { Quat } from "./quat.js";
import { rotorApply } from "./quat.js";
import type { Grid } from "./sampler.js";

export interface Projected {
  /** flat (x, y, w) triples, one per lattice point */
  vertices: Float64Array;
  clipped: Uint8Array;
}

export function dopImages(grid: Grid, rotor?: [Quat, Quat]): { z: Projected; w: Projected } {
  const n = grid.points.length / 4;
  const vz = new Float64Array(n * 3);
  const vw = new Float64Array(n * 3);
  for (let i = 0; i < n; i++) {
    let p: Quat = [grid.points[4 * i], grid.points[4 * i + 1], grid.points[4 * i + 2], grid.points[4 * i + 3]];
    if (rotor) p = rotorApply(rotor[0], rotor[1], p);
    vz[3 * i] = p[0];
    vz[3 * i + 1] = p[1];
    vz[3 * i + 2] = -p[2];
    vw[3 * i] = p[0];
    vw[3 * i + 1] = p[1];
    vw[3 * i + 2] = p[3];
  }
  return {
    z: { vertices: vz, clipped: new Uint8Array(n) },
    w: { vertices: vw, clipped: new Uint8Array(n) },
  };
}

export function perspectiveImage(grid: Grid, d: number, rotor?: [Quat, Quat], epsilon?: number): Projected {
  const eps = epsilon ?? 1e-9 * d;
  const n = grid.points.length / 4;
  const v = new Float64Array(n * 3);
  const clipped = new Uint8Array(n);
  for (let i = 0; i < n; i++) {
    let p: Quat = [grid.points[4 * i], grid.points[4 * i + 1], grid.points[4 * i + 2], grid.points[4 * i + 3]];
    if (rotor) p = rotorApply(rotor[0], rotor[1], p);
    const z = p[2];
    if (z === 0) {
      v[3 * i] = p[0];
      v[3 * i + 1] = p[1];
      v[3 * i + 2] = p[3];
    } else if (Math.abs(z) <= eps) {
      clipped[i] = 1;
      v[3 * i] = p[0];
      v[3 * i + 1] = p[1];
      v[3 * i + 2] = p[3];
    } else {
      v[3 * i] = (d * p[0]) / z;
      v[3 * i + 1] = (d * p[1]) / z;
      v[3 * i + 2] = (d * p[3]) / z;
    }
  }
  return { vertices: v, clipped };
}

// -- topology helpers --------------------------------------------------

export type Segment = [number, number];
export type QuadFace = [number, number, number, number];

export function polylineSegments(count: number, closed: boolean, clipped?: Uint8Array): Segment[] {
  const segs: Segment[] = [];
  for (let i = 0; i + 1 < count; i++) segs.push([i, i + 1]);
  if (closed && count > 2) segs.push([count - 1, 0]);
  if (!clipped) return segs;
  return segs.filter(([a, b]) => !clipped[a] && !clipped[b]);
}

export function quadFaces(m: number, n: number, clipped?: Uint8Array): QuadFace[] {
  const faces: QuadFace[] = [];
  for (let i = 0; i + 1 < m; i++) {
    for (let j = 0; j + 1 < n; j++) {
      const f: QuadFace = [i * n + j, i * n + j + 1, (i + 1) * n + j + 1, (i + 1) * n + j];
      if (clipped && (clipped[f[0]] || clipped[f[1]] || clipped[f[2]] || clipped[f[3]])) continue;
      faces.push(f);
    }
  }
  return faces;
}

export function isClosedCurve(grid: Grid): boolean {
  const n = grid.points.length / 4 - 1;
  let s = 0;
  for (let k = 0; k < 4; k++) {
    const diff = grid.points[k] - grid.points[4 * n + k];
    s += diff * diff;
  }
  return Math.sqrt(s) <= 1e-9;
}

/** Index lists of the six boundary faces of a 3-dimensional grid. */
export function boundaryFaceIndices(res: number[]): { fixedAxis: number; side: number; indices: number[]; shape: [number, number] }[] {
  const [r0, r1, r2] = res;
  const out: { fixedAxis: number; side: number; indices: number[]; shape: [number, number] }[] = [];
  const flat = (i: number, j: number, k: number) => (i * r1 + j) * r2 + k;
  for (const [axis, size] of [[0, r0], [1, r1], [2, r2]] as const) {
    for (const side of [0, size - 1]) {
      const indices: number[] = [];
      if (axis === 0) {
        for (let j = 0; j < r1; j++) for (let k = 0; k < r2; k++) indices.push(flat(side, j, k));
        out.push({ fixedAxis: axis, side, indices, shape: [r1, r2] });
      } else if (axis === 1) {
        for (let i = 0; i < r0; i++) for (let k = 0; k < r2; k++) indices.push(flat(i, side, k));
        out.push({ fixedAxis: axis, side, indices, shape: [r0, r2] });
      } else {
        for (let i = 0; i < r0; i++) for (let j = 0; j < r1; j++) indices.push(flat(i, j, side));
        out.push({ fixedAxis: axis, side, indices, shape: [r0, r1] });
      }
    }
  }
  return out;
}
