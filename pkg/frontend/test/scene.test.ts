/** Scene loading, validation diagnostics, headless mesh building, and
client-side re-evaluation. */

import assert from "node:assert/strict";
import { test } from "node:test";

import {
  boundaryFaceIndices,
  dopImages,
  isClosedCurve,
  perspectiveImage,
  polylineSegments,
  quadFaces,
} from "../src/project.js";
import { loadScene, parseSceneText, SchemaError, VersionError } from "../src/scene.js";
import { EvalDiagnostic, bakedGrid, evalSetPoint, paramsOf, sampleSet, sampleSlice } from "../src/sampler.js";
import { sceneDoc, sceneIds, sceneText } from "./helpers.js";

test("all ten exported scenes load and build meshes in both projections", () => {
  const ids = sceneIds();
  assert.equal(ids.length, 10);
  for (const id of ids) {
    const scene = loadScene(sceneDoc(id));
    assert.ok(scene.resultNames().length >= 1, id);
    for (const name of scene.resultNames()) {
      const grid = bakedGrid(scene.doc, name);
      assert.ok(grid, `${id}/${name} has no baked grid`);
      const dim = grid!.resolutions.length;
      const { z, w } = dopImages(grid!);
      assert.equal(z.vertices.length, w.vertices.length);
      const persp = perspectiveImage(grid!, scene.focalD);
      assert.equal(persp.vertices.length / 3, grid!.points.length / 4);
      if (dim === 1) {
        const segs = polylineSegments(grid!.points.length / 4, isClosedCurve(grid!), persp.clipped);
        assert.ok(segs.length > 0, `${id}/${name}: no segments`);
      } else if (dim === 2) {
        const faces = quadFaces(grid!.resolutions[0], grid!.resolutions[1], z.clipped);
        assert.ok(faces.length > 0, `${id}/${name}: no faces`);
      } else {
        const faces = boundaryFaceIndices(grid!.resolutions);
        assert.equal(faces.length, 6);
      }
    }
  }
});

test("dop panels share (x, y) coordinates on every vertex", () => {
  const scene = loadScene(sceneDoc("clifford-sum"));
  const grid = bakedGrid(scene.doc, "c")!;
  const { z, w } = dopImages(grid);
  for (let i = 0; i < z.vertices.length / 3; i++) {
    assert.equal(z.vertices[3 * i], w.vertices[3 * i]);
    assert.equal(z.vertices[3 * i + 1], w.vertices[3 * i + 1]);
  }
});

test("scene version 2 raises VersionError", () => {
  const doc = sceneDoc("cube") as Record<string, unknown>;
  doc.m4dScene = 2;
  assert.throws(() => loadScene(doc), VersionError);
});

test("truncated JSON raises SchemaError", () => {
  const text = sceneText("cube");
  assert.throws(() => parseSceneText(text.slice(0, text.length / 2)), SchemaError);
});

test("schema errors carry a JSON path", () => {
  const doc = sceneDoc("clifford-sum") as { sets: { coords: unknown[] }[] };
  doc.sets[0].coords = doc.sets[0].coords.slice(0, 3);
  try {
    loadScene(doc);
    assert.fail("expected SchemaError");
  } catch (exc) {
    assert.ok(exc instanceof SchemaError);
    assert.match((exc as SchemaError).path, /sets\[0\]\.coords/);
  }
});

test("grid size mismatch is rejected with its path", () => {
  const doc = sceneDoc("clifford-sum") as { grids: { points: number[] }[] };
  doc.grids[0].points = doc.grids[0].points.slice(0, 8);
  assert.throws(() => loadScene(doc), (exc: unknown) => exc instanceof SchemaError && /grids\[0\]\.points/.test((exc as SchemaError).path));
});

test("sliders clamp to their declared range", () => {
  const scene = loadScene(sceneDoc("line-helix"));
  assert.equal(scene.sliderState.t, 2);
  const v = scene.setSlider("t", 1000);
  assert.ok(v <= scene.sliderRange.t[1]);
  assert.equal(scene.sliderState.t, v);
});

test("slider change re-evaluates derived sets through the ASTs", () => {
  const scene = loadScene(sceneDoc("line-helix"));
  const before = evalSetPoint(scene, "d", { u: 0.25, v: Math.PI / 2 });
  scene.setSlider("t", 3.0);
  const after = evalSetPoint(scene, "d", { u: 0.25, v: Math.PI / 2 });
  assert.notDeepEqual(before, after);
  // first coordinate is t*v/(2*pi) + u*cos(v)
  const t = 3.0;
  const expect = (t * (Math.PI / 2)) / (2 * Math.PI) + 0.25 * Math.cos(Math.PI / 2);
  assert.ok(Math.abs(after[0] - expect) <= 1e-12);
  const grid = sampleSet(scene, "d", [5, 9]);
  assert.equal(grid.points.length, 5 * 9 * 4);
  for (let k = 0; k < 4; k++) {
    const env = { u: -0.5, v: -2 * Math.PI };
    assert.ok(Math.abs(grid.points[k] - evalSetPoint(scene, "d", env)[k]) <= 1e-15);
  }
});

test("butterfly morph: helix pitch slider reaches the butterfly configuration", () => {
  const scene = loadScene(sceneDoc("line-helix"));
  const butterflyT = 2 * Math.PI;
  scene.setSlider("t", butterflyT);
  const p = evalSetPoint(scene, "d", { u: 0.5, v: Math.PI });
  // with t = 2*pi the first coordinate at v = pi is pi + u*cos(pi)
  assert.ok(Math.abs(p[0] - (Math.PI + 0.5 * Math.cos(Math.PI))) <= 1e-12);
});

test("evaluation problems surface as diagnostics, not crashes", () => {
  const doc = {
    m4dScene: 1,
    sets: [
      {
        name: "bad",
        params: [{ name: "u", lo: -1, hi: 1 }],
        constants: [],
        coords: [
          { op: "sqrt", args: [{ op: "param", args: ["u"] }] },
          { op: "const", args: [0] },
          { op: "const", args: [0] },
          { op: "const", args: [0] },
        ],
      },
    ],
    derived: [],
    grids: [],
    projections: { dop: {}, perspective: { d: 2 } },
    checks: [],
  };
  const scene = loadScene(doc);
  assert.throws(() => sampleSet(scene, "bad", [9]), EvalDiagnostic);
});

test("hopf v1 slices sweep the torus family", () => {
  const scene = loadScene(sceneDoc("hopf-3sphere"));
  for (const v1 of [Math.PI / 8, Math.PI / 4, Math.PI / 2]) {
    for (const [u, v2] of [[0.3, 1.2], [2.0, 4.4]]) {
      const p = evalSetPoint(scene, "c", { u, v1, v2 });
      const xy = p[0] * p[0] + p[1] * p[1];
      const zw = p[2] * p[2] + p[3] * p[3];
      assert.ok(Math.abs(xy - Math.cos(v1) ** 2) <= 1e-12);
      assert.ok(Math.abs(zw - Math.sin(v1) ** 2) <= 1e-12);
    }
  }
});

test("iso-slice grids freeze one parameter and keep the torus identities", () => {
  const scene = loadScene(sceneDoc("hopf-3sphere"));
  const v1 = Math.PI / 4;
  const grid = sampleSlice(scene, "c", "v1", v1, [17, 17]);
  assert.deepEqual(grid.paramNames, ["u", "v2"]);
  assert.equal(grid.points.length, 17 * 17 * 4);
  for (let i = 0; i < grid.points.length; i += 4) {
    const [x, y, z, w] = grid.points.subarray(i, i + 4);
    assert.ok(Math.abs(x * x + y * y - Math.cos(v1) ** 2) <= 1e-12);
    assert.ok(Math.abs(z * z + w * w - Math.sin(v1) ** 2) <= 1e-12);
  }
  assert.throws(() => sampleSlice(scene, "c", "nope", 0), EvalDiagnostic);
});

test("derived parameters concatenate operand parameters in order", () => {
  const scene = loadScene(sceneDoc("clifford-rotation"));
  assert.deepEqual(paramsOf(scene.doc, "d").map((p) => p.name), ["v1", "v2"]);
  assert.deepEqual(paramsOf(scene.doc, "c").map((p) => p.name), ["u1", "u2"]);
});
