/** Scene JSON (schema v1) validation and viewer-side scene state. */

import type { ExprJson } from "./exprEval.js";

export class SchemaError extends Error {
  constructor(public path: string, message: string) {
    super(`${path}: ${message}`);
  }
}

export class VersionError extends Error {}

export interface ParamJson {
  name: string;
  lo: number;
  hi: number;
}

export interface ConstantJson {
  name: string;
  value: number;
  min: number;
  max: number;
}

export interface SetJson {
  name: string;
  params: ParamJson[];
  constants: ConstantJson[];
  coords: [ExprJson, ExprJson, ExprJson, ExprJson];
}

export interface DerivedJson {
  name: string;
  op: "(+)" | "(-)" | "(*)" | "(\\)" | "(/)";
  lhs: string;
  rhs: string;
}

export interface GridJson {
  setName: string;
  resolutions: number[];
  points: number[];
  layout: "row-major";
}

export interface SceneDoc {
  m4dScene: 1;
  sets: SetJson[];
  derived: DerivedJson[];
  grids: GridJson[];
  projections: { dop: Record<string, never>; perspective: { d: number } };
  checks: string[];
}

const MINK_OPS = new Set(["(+)", "(-)", "(*)", "(\\)", "(/)"]);

function need(cond: boolean, path: string, message: string): asserts cond {
  if (!cond) throw new SchemaError(path, message);
}

function checkExpr(e: unknown, path: string): void {
  need(typeof e === "object" && e !== null, path, "expression must be an object");
  const obj = e as Record<string, unknown>;
  need(typeof obj.op === "string", `${path}.op`, "missing op tag");
  need(Array.isArray(obj.args), `${path}.args`, "missing args array");
  const op = obj.op as string;
  const args = obj.args as unknown[];
  if (op === "const") {
    need(typeof args[0] === "number" && Number.isFinite(args[0]), `${path}.args[0]`, "const needs a finite number");
  } else if (op === "param") {
    need(typeof args[0] === "string", `${path}.args[0]`, "param needs a name");
  } else if (op === "pow") {
    checkExpr(args[0], `${path}.args[0]`);
    need(typeof args[1] === "number" && Number.isInteger(args[1]) && args[1] >= 0, `${path}.args[1]`, "pow needs a non-negative integer exponent");
  } else if (["neg", "sin", "cos", "tan", "sqrt", "abs"].includes(op)) {
    checkExpr(args[0], `${path}.args[0]`);
  } else if (["add", "sub", "mul", "div"].includes(op)) {
    checkExpr(args[0], `${path}.args[0]`);
    checkExpr(args[1], `${path}.args[1]`);
  } else {
    throw new SchemaError(`${path}.op`, `unknown op '${op}'`);
  }
}

export function validateScene(doc: unknown): SceneDoc {
  need(typeof doc === "object" && doc !== null && !Array.isArray(doc), "$", "scene must be an object");
  const d = doc as Record<string, unknown>;
  need("m4dScene" in d, "$.m4dScene", "missing schema version");
  if (d.m4dScene !== 1) {
    throw new VersionError(`unsupported scene version ${JSON.stringify(d.m4dScene)}`);
  }
  need(Array.isArray(d.sets), "$.sets", "missing sets array");
  const names = new Set<string>();
  (d.sets as unknown[]).forEach((s, i) => {
    const path = `$.sets[${i}]`;
    need(typeof s === "object" && s !== null, path, "set must be an object");
    const set = s as Record<string, unknown>;
    need(typeof set.name === "string", `${path}.name`, "missing name");
    need(!names.has(set.name as string), `${path}.name`, "duplicate set name");
    names.add(set.name as string);
    need(Array.isArray(set.params) && (set.params as unknown[]).length <= 3, `${path}.params`, "params must be a list of at most 3");
    (set.params as unknown[]).forEach((p, j) => {
      const pp = p as Record<string, unknown>;
      need(typeof pp.name === "string", `${path}.params[${j}].name`, "missing name");
      need(typeof pp.lo === "number" && typeof pp.hi === "number" && pp.lo <= pp.hi, `${path}.params[${j}]`, "bad interval");
    });
    need(Array.isArray(set.constants), `${path}.constants`, "missing constants array");
    (set.constants as unknown[]).forEach((c, j) => {
      const cc = c as Record<string, unknown>;
      need(typeof cc.name === "string", `${path}.constants[${j}].name`, "missing name");
      for (const key of ["value", "min", "max"]) {
        need(typeof cc[key] === "number", `${path}.constants[${j}].${key}`, "missing number");
      }
    });
    need(Array.isArray(set.coords) && (set.coords as unknown[]).length === 4, `${path}.coords`, "exactly 4 coordinate expressions required");
    (set.coords as unknown[]).forEach((e, j) => checkExpr(e, `${path}.coords[${j}]`));
  });
  need(Array.isArray(d.derived), "$.derived", "missing derived array");
  (d.derived as unknown[]).forEach((x, i) => {
    const path = `$.derived[${i}]`;
    const dd = x as Record<string, unknown>;
    need(typeof dd.name === "string", `${path}.name`, "missing name");
    need(!names.has(dd.name as string), `${path}.name`, "duplicate set name");
    need(MINK_OPS.has(dd.op as string), `${path}.op`, "unknown Minkowski operator");
    for (const side of ["lhs", "rhs"]) {
      need(typeof dd[side] === "string" && names.has(dd[side] as string), `${path}.${side}`, "operand not defined before use");
    }
    names.add(dd.name as string);
  });
  need(Array.isArray(d.grids), "$.grids", "missing grids array");
  (d.grids as unknown[]).forEach((g, i) => {
    const path = `$.grids[${i}]`;
    const gg = g as Record<string, unknown>;
    need(typeof gg.setName === "string" && names.has(gg.setName as string), `${path}.setName`, "grid references unknown set");
    need(Array.isArray(gg.resolutions), `${path}.resolutions`, "missing resolutions");
    need(gg.layout === "row-major", `${path}.layout`, "layout must be row-major");
    const count = (gg.resolutions as number[]).reduce((a, b) => a * b, 1) * 4;
    need(Array.isArray(gg.points) && (gg.points as unknown[]).length === count, `${path}.points`, `expected ${count} floats`);
  });
  const proj = d.projections as Record<string, unknown> | undefined;
  need(typeof proj === "object" && proj !== null, "$.projections", "missing projections");
  const persp = (proj as Record<string, unknown>).perspective as Record<string, unknown> | undefined;
  need(typeof persp === "object" && persp !== null && typeof persp.d === "number" && persp.d > 0, "$.projections.perspective.d", "missing positive focal distance");
  need(Array.isArray(d.checks), "$.checks", "missing checks array");
  return doc as SceneDoc;
}

export function parseSceneText(text: string): SceneDoc {
  let raw: unknown;
  try {
    raw = JSON.parse(text);
  } catch (exc) {
    throw new SchemaError("$", `not valid JSON: ${(exc as Error).message}`);
  }
  return validateScene(raw);
}

// ---------------------------------------------------------------------------

export type ProjectionMode = "dop" | "perspective";

export interface RotorAngles {
  /** angle of the left/right unit factors, in radians */
  thetaL: number;
  thetaR: number;
  axisL: [number, number, number];
  axisR: [number, number, number];
}

/** Mutable viewer state around a validated document. */
export class ViewerScene {
  doc: SceneDoc;
  activeProjection: ProjectionMode;
  focalD: number;
  sliderState: Record<string, number> = {};
  sliderRange: Record<string, [number, number]> = {};
  rotorAngles: RotorAngles = { thetaL: 0, thetaR: 0, axisL: [1, 1, 1], axisR: [0, 0, 1] };

  constructor(doc: SceneDoc) {
    this.doc = doc;
    this.activeProjection = "dop";
    this.focalD = doc.projections.perspective.d;
    for (const set of doc.sets) {
      for (const c of set.constants) {
        this.sliderState[c.name] = c.value;
        this.sliderRange[c.name] = [c.min, c.max];
      }
    }
  }

  setSlider(name: string, value: number): number {
    const range = this.sliderRange[name];
    if (!range) throw new SchemaError(`$.constants.${name}`, "unknown constant");
    const clamped = Math.min(range[1], Math.max(range[0], value));
    this.sliderState[name] = clamped;
    return clamped;
  }

  setNames(): string[] {
    return [...this.doc.sets.map((s) => s.name), ...this.doc.derived.map((d) => d.name)];
  }

  /** Sets not consumed as operands of a derived definition. */
  resultNames(): string[] {
    const used = new Set<string>();
    for (const d of this.doc.derived) {
      used.add(d.lhs);
      used.add(d.rhs);
    }
    return this.setNames().filter((n) => !used.has(n));
  }
}

export function loadScene(doc: unknown): ViewerScene {
  return new ViewerScene(validateScene(doc));
}
