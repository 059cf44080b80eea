/** Client-side re-evaluation of scene sets over parameter lattices.

Derived sets are evaluated pointwise: operand points from their coordinate
ASTs, combined with the quaternion operation of the derived definition.
Resolution is capped (default 96 per direction for surfaces) to keep
re-sampling interactive; the cap is surfaced so the UI can display it.
*/

import { evalExpr, DomainError, UnboundParamError, type Env } from "./exprEval.js";
import type { DerivedJson, SceneDoc, SetJson, ViewerScene } from "./scene.js";
import { add, divideLeft, divideRight, mul, sub, ZeroNormError, type Quat } from "./quat.js";

export const RESOLUTION_CAP = 96;
export const CURVE_RESOLUTION = 193;
export const VOLUME_RESOLUTION = 17;

export interface Grid {
  setName: string;
  paramNames: string[];
  resolutions: number[];
  /** flat row-major (x, y, z, w) per lattice point */
  points: Float64Array;
}

export class EvalDiagnostic extends Error {
  constructor(public setName: string, public cause_: Error) {
    super(`evaluating '${setName}': ${cause_.message}`);
  }
}

interface SetLookup {
  base?: SetJson;
  derived?: DerivedJson;
}

function lookup(doc: SceneDoc, name: string): SetLookup {
  const base = doc.sets.find((s) => s.name === name);
  if (base) return { base };
  const derived = doc.derived.find((d) => d.name === name);
  if (derived) return { derived };
  throw new EvalDiagnostic(name, new UnboundParamError(name));
}

/** Parameter descriptors of a set, operands first for derived sets. */
export function paramsOf(doc: SceneDoc, name: string): { name: string; lo: number; hi: number }[] {
  const found = lookup(doc, name);
  if (found.base) return found.base.params;
  const d = found.derived!;
  return [...paramsOf(doc, d.lhs), ...paramsOf(doc, d.rhs)];
}

/** Evaluate one 4-D point of a set; sliders override stored constants. */
export function evalSetPoint(scene: ViewerScene, name: string, env: Env): Quat {
  const found = lookup(scene.doc, name);
  if (found.base) {
    const set = found.base;
    const full: Env = {};
    for (const c of set.constants) {
      full[c.name] = scene.sliderState[c.name] ?? c.value;
    }
    Object.assign(full, env);
    try {
      return [
        evalExpr(set.coords[0], full),
        evalExpr(set.coords[1], full),
        evalExpr(set.coords[2], full),
        evalExpr(set.coords[3], full),
      ];
    } catch (exc) {
      if (exc instanceof DomainError || exc instanceof UnboundParamError) {
        throw new EvalDiagnostic(name, exc);
      }
      throw exc;
    }
  }
  const d = found.derived!;
  const a = evalSetPoint(scene, d.lhs, env);
  const b = evalSetPoint(scene, d.rhs, env);
  try {
    switch (d.op) {
      case "(+)":
        return add(a, b);
      case "(-)":
        return sub(a, b);
      case "(*)":
        return mul(a, b);
      case "(\\)":
        return divideLeft(a, b); // lhs^-1 (x) rhs
      case "(/)":
        return divideRight(a, b); // lhs (x) rhs^-1
    }
  } catch (exc) {
    if (exc instanceof ZeroNormError) throw new EvalDiagnostic(name, exc);
    throw exc;
  }
}

/** Lattice values with exact endpoints (index res-1 is exactly hi). */
export function axisSamples(lo: number, hi: number, res: number): number[] {
  const step = (hi - lo) / (res - 1);
  const out = new Array<number>(res);
  for (let i = 0; i < res; i++) {
    out[i] = i === res - 1 ? hi : lo + i * step;
  }
  return out;
}

export function defaultResolutions(dim: number): number[] {
  if (dim === 0) return [];
  if (dim === 1) return [CURVE_RESOLUTION];
  if (dim === 2) return [RESOLUTION_CAP, RESOLUTION_CAP];
  return [VOLUME_RESOLUTION, VOLUME_RESOLUTION, VOLUME_RESOLUTION];
}

export function capResolutions(res: number[]): number[] {
  return res.map((r) => Math.max(2, Math.min(RESOLUTION_CAP, r)));
}

/** Re-sample a set from its ASTs.  Throws EvalDiagnostic on domain errors. */
export function sampleSet(scene: ViewerScene, name: string, resolutions?: number[]): Grid {
  const params = paramsOf(scene.doc, name);
  const res = resolutions ?? defaultResolutions(params.length);
  if (res.length !== params.length) {
    throw new EvalDiagnostic(name, new Error(`need ${params.length} resolutions, got ${res.length}`));
  }
  const axes = params.map((p, k) => axisSamples(p.lo, p.hi, res[k]));
  const count = res.reduce((a, b) => a * b, 1);
  const points = new Float64Array(count * 4);
  const env: Env = {};
  const idx = new Array(params.length).fill(0);
  for (let flat = 0; flat < count; flat++) {
    for (let k = 0; k < params.length; k++) {
      env[params[k].name] = axes[k][idx[k]];
    }
    const q = evalSetPoint(scene, name, env);
    points.set(q, flat * 4);
    for (let k = params.length - 1; k >= 0; k--) {
      idx[k]++;
      if (idx[k] < res[k]) break;
      idx[k] = 0;
    }
  }
  return { setName: name, paramNames: params.map((p) => p.name), resolutions: res, points };
}

/** Sample the (dim-1)-dimensional slice with one parameter frozen. */
export function sampleSlice(
  scene: ViewerScene,
  name: string,
  param: string,
  value: number,
  resolutions?: number[],
): Grid {
  const params = paramsOf(scene.doc, name);
  const rest = params.filter((p) => p.name !== param);
  if (rest.length === params.length) {
    throw new EvalDiagnostic(name, new Error(`'${param}' is not a parameter of this set`));
  }
  const res = resolutions ?? defaultResolutions(rest.length);
  const axes = rest.map((p, k) => axisSamples(p.lo, p.hi, res[k]));
  const count = res.reduce((a, b) => a * b, 1);
  const points = new Float64Array(count * 4);
  const env: Env = { [param]: value };
  const idx = new Array(rest.length).fill(0);
  for (let flat = 0; flat < count; flat++) {
    for (let k = 0; k < rest.length; k++) {
      env[rest[k].name] = axes[k][idx[k]];
    }
    points.set(evalSetPoint(scene, name, env), flat * 4);
    for (let k = rest.length - 1; k >= 0; k--) {
      idx[k]++;
      if (idx[k] < res[k]) break;
      idx[k] = 0;
    }
  }
  return { setName: `${name}[${param}=${value}]`, paramNames: rest.map((p) => p.name), resolutions: res, points };
}

/** Grid from the baked points shipped in the document (instant load path). */
export function bakedGrid(doc: SceneDoc, setName: string): Grid | undefined {
  const g = doc.grids.find((x) => x.setName === setName);
  if (!g) return undefined;
  return {
    setName,
    paramNames: paramsOf(doc, setName).map((p) => p.name),
    resolutions: g.resolutions,
    points: Float64Array.from(g.points),
  };
}
