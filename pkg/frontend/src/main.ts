/** Browser app: load a scene, adjust constants / focal distance / rotor,
re-project client-side, and orbit the result.  DOP mode shows the z- and
w-image panels side by side under one linked camera, so their (x, y)
shadows stay identical per frame. */

import { defaultCamera, type Camera, type Viewport } from "./camera.js";
import { EvalDiagnostic, RESOLUTION_CAP, bakedGrid, defaultResolutions, paramsOf, sampleSet, sampleSlice, type Grid } from "./sampler.js";
import { axisAngleQuat, type Quat } from "./quat.js";
import { boundaryFaceIndices, dopImages, isClosedCurve, perspectiveImage, polylineSegments, quadFaces, type Projected } from "./project.js";
import { loadScene, SchemaError, VersionError, type ViewerScene } from "./scene.js";
import { drawWireframe, type DrawItem } from "./render.js";

const PRESET_AXIS_L: [number, number, number] = [1, 1, 1];
const PRESET_THETA_L = Math.PI / 3; // left factor (1/2, 1/2, 1/2, 1/2)

const COLORS = ["#e0a030", "#40b0e0", "#70d080", "#e070b0", "#b0a0ff", "#f0f0a0"];

interface MeshData {
  grid: Grid;
  kind: "polyline" | "quads" | "boundary";
}

const state = {
  scene: undefined as ViewerScene | undefined,
  meshes: [] as MeshData[],
  camera: defaultCamera() as Camera,
  rotorT: 0,
  diagnostics: "",
  /** iso-slice value per 3-parameter result set (sliced along its first parameter) */
  sliceState: {} as Record<string, number>,
};

function $(id: string): HTMLElement {
  const el = document.getElementById(id);
  if (!el) throw new Error(`missing element #${id}`);
  return el;
}

function currentRotor(): [Quat, Quat] | undefined {
  if (state.rotorT === 0) return undefined;
  const left = axisAngleQuat(PRESET_AXIS_L, state.rotorT * PRESET_THETA_L);
  return [left, [1, 0, 0, 0]];
}

function rebuildMeshes(): void {
  const scene = state.scene;
  state.meshes = [];
  state.diagnostics = "";
  if (!scene) return;
  const notes: string[] = [];
  for (const name of scene.resultNames()) {
    const dim = paramsOf(scene.doc, name).length;
    try {
      let grid = bakedGrid(scene.doc, name);
      const touched = Object.keys(scene.sliderState).length > 0;
      if (!grid || touched) {
        grid = sampleSet(scene, name, defaultResolutions(dim));
        notes.push(`${name}: re-sampled at ${grid.resolutions.join("x")} (cap ${RESOLUTION_CAP})`);
      } else {
        notes.push(`${name}: baked ${grid.resolutions.join("x")}`);
      }
      state.meshes.push({ grid, kind: dim <= 1 ? "polyline" : dim === 2 ? "quads" : "boundary" });
      if (dim === 3 && name in state.sliceState) {
        const param = paramsOf(scene.doc, name)[0];
        const slice = sampleSlice(scene, name, param.name, state.sliceState[name], [48, 48]);
        state.meshes.push({ grid: slice, kind: "quads" });
        notes.push(`${name}: iso-slice ${param.name} = ${state.sliceState[name].toFixed(3)}`);
      }
    } catch (exc) {
      if (exc instanceof EvalDiagnostic) {
        state.diagnostics += `${exc.message}\n`;
      } else {
        throw exc;
      }
    }
  }
  $("resolution-note").textContent = notes.join("; ");
  $("diagnostics").textContent = state.diagnostics;
}

function drawItemsFor(projected: Projected, mesh: MeshData, color: string): DrawItem[] {
  if (mesh.kind === "polyline") {
    const count = mesh.grid.points.length / 4;
    return [{ projected, color, segments: polylineSegments(count, isClosedCurve(mesh.grid), projected.clipped) }];
  }
  if (mesh.kind === "quads") {
    const [m, n] = mesh.grid.resolutions;
    return [{ projected, color, faces: quadFaces(m, n, projected.clipped) }];
  }
  const items: DrawItem[] = [];
  for (const face of boundaryFaceIndices(mesh.grid.resolutions)) {
    const sub = new Float64Array(face.indices.length * 3);
    const clip = new Uint8Array(face.indices.length);
    face.indices.forEach((src, dst) => {
      sub.set(projected.vertices.subarray(3 * src, 3 * src + 3), 3 * dst);
      clip[dst] = projected.clipped[src];
    });
    items.push({
      projected: { vertices: sub, clipped: clip },
      color,
      faces: quadFaces(face.shape[0], face.shape[1], clip),
    });
  }
  return items;
}

function redraw(): void {
  const canvas = $("view") as HTMLCanvasElement;
  const ctx = canvas.getContext("2d")!;
  ctx.clearRect(0, 0, canvas.width, canvas.height);
  const scene = state.scene;
  if (!scene) return;
  const rotor = currentRotor();
  if (scene.activeProjection === "dop") {
    const half = canvas.width / 2;
    const vz: Viewport = { x: 0, y: 0, width: half, height: canvas.height };
    const vw: Viewport = { x: half, y: 0, width: half, height: canvas.height };
    const zItems: DrawItem[] = [];
    const wItems: DrawItem[] = [];
    state.meshes.forEach((mesh, k) => {
      const { z, w } = dopImages(mesh.grid, rotor);
      zItems.push(...drawItemsFor(z, mesh, COLORS[k % COLORS.length]));
      wItems.push(...drawItemsFor(w, mesh, COLORS[k % COLORS.length]));
    });
    drawWireframe(ctx, state.camera, vz, zItems, "z-image (x, y, -z)");
    drawWireframe(ctx, state.camera, vw, wItems, "w-image (x, y, w)");
  } else {
    const vp: Viewport = { x: 0, y: 0, width: canvas.width, height: canvas.height };
    const items: DrawItem[] = [];
    state.meshes.forEach((mesh, k) => {
      const img = perspectiveImage(mesh.grid, scene.focalD, rotor);
      items.push(...drawItemsFor(img, mesh, COLORS[k % COLORS.length]));
    });
    drawWireframe(ctx, state.camera, vp, items, `4-D perspective, d = ${scene.focalD.toFixed(2)}`);
  }
}

function buildSliders(): void {
  const scene = state.scene;
  const panel = $("sliders");
  panel.innerHTML = "";
  if (!scene) return;
  for (const [name, [lo, hi]] of Object.entries(scene.sliderRange)) {
    if (lo === hi) continue;
    const row = document.createElement("label");
    row.textContent = `${name} `;
    const input = document.createElement("input");
    input.type = "range";
    input.min = String(lo);
    input.max = String(hi);
    input.step = String((hi - lo) / 200);
    input.value = String(scene.sliderState[name]);
    const value = document.createElement("span");
    value.textContent = Number(input.value).toFixed(3);
    input.addEventListener("input", () => {
      const v = scene.setSlider(name, Number(input.value));
      value.textContent = v.toFixed(3);
      rebuildMeshes();
      redraw();
    });
    row.append(input, value);
    panel.append(row);
  }
  for (const name of scene.resultNames()) {
    const params = paramsOf(scene.doc, name);
    if (params.length !== 3) continue;
    const p = params[0];
    const mid = p.lo + 0.5 * (p.hi - p.lo);
    state.sliceState[name] = mid;
    const row = document.createElement("label");
    row.textContent = `${name}: slice ${p.name} `;
    const input = document.createElement("input");
    input.type = "range";
    input.min = String(p.lo);
    input.max = String(p.hi);
    input.step = String((p.hi - p.lo) / 200);
    input.value = String(mid);
    const value = document.createElement("span");
    value.textContent = mid.toFixed(3);
    input.addEventListener("input", () => {
      state.sliceState[name] = Number(input.value);
      value.textContent = Number(input.value).toFixed(3);
      rebuildMeshes();
      redraw();
    });
    row.append(input, value);
    panel.append(row);
  }
}

function setScene(text: string, label: string): void {
  try {
    const scene = loadScene(JSON.parse(text));
    state.scene = scene;
    state.rotorT = 0;
    state.sliceState = {};
    ($("rotor") as HTMLInputElement).value = "0";
    ($("focal") as HTMLInputElement).value = String(scene.focalD);
    $("scene-label").textContent = label;
    buildSliders();
    rebuildMeshes();
    redraw();
  } catch (exc) {
    if (exc instanceof SchemaError || exc instanceof VersionError || exc instanceof SyntaxError) {
      $("diagnostics").textContent = String(exc);
    } else {
      throw exc;
    }
  }
}

async function boot(): Promise<void> {
  const select = $("scene-select") as HTMLSelectElement;
  try {
    const index: string[] = await (await fetch("fixtures/scenes/index.json")).json();
    for (const id of index) {
      const opt = document.createElement("option");
      opt.value = id;
      opt.textContent = id;
      select.append(opt);
    }
  } catch {
    $("diagnostics").textContent = "no bundled scenes found; load a scene JSON file";
  }
  select.addEventListener("change", async () => {
    if (!select.value) return;
    const text = await (await fetch(`fixtures/scenes/${select.value}.json`)).text();
    setScene(text, select.value);
  });
  ($("scene-file") as HTMLInputElement).addEventListener("change", async (ev) => {
    const file = (ev.target as HTMLInputElement).files?.[0];
    if (file) setScene(await file.text(), file.name);
  });
  $("mode-dop").addEventListener("click", () => {
    if (state.scene) state.scene.activeProjection = "dop";
    redraw();
  });
  $("mode-persp").addEventListener("click", () => {
    if (state.scene) state.scene.activeProjection = "perspective";
    redraw();
  });
  ($("focal") as HTMLInputElement).addEventListener("input", (ev) => {
    if (state.scene) {
      state.scene.focalD = Number((ev.target as HTMLInputElement).value);
      if (state.scene.activeProjection === "perspective") redraw();
    }
  });
  ($("rotor") as HTMLInputElement).addEventListener("input", (ev) => {
    state.rotorT = Number((ev.target as HTMLInputElement).value);
    redraw();
  });
  $("preset").addEventListener("click", () => {
    state.rotorT = 1;
    ($("rotor") as HTMLInputElement).value = "1";
    redraw();
  });
  const canvas = $("view") as HTMLCanvasElement;
  let dragging = false;
  let last: [number, number] = [0, 0];
  canvas.addEventListener("pointerdown", (ev) => {
    dragging = true;
    last = [ev.clientX, ev.clientY];
    canvas.setPointerCapture(ev.pointerId);
  });
  canvas.addEventListener("pointermove", (ev) => {
    if (!dragging) return;
    state.camera.yaw += (ev.clientX - last[0]) * 0.01;
    state.camera.pitch = Math.max(-1.5, Math.min(1.5, state.camera.pitch + (ev.clientY - last[1]) * 0.01));
    last = [ev.clientX, ev.clientY];
    redraw();
  });
  canvas.addEventListener("pointerup", () => {
    dragging = false;
  });
  canvas.addEventListener("wheel", (ev) => {
    ev.preventDefault();
    state.camera.distance = Math.max(1, Math.min(40, state.camera.distance * (1 + ev.deltaY * 0.001)));
    redraw();
  });
  redraw();
}

boot();
