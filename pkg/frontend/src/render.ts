/** Canvas wireframe rendering of projected meshes. */

import { projectPoint, type Camera, type Viewport } from "./camera.js";
import type { Projected, QuadFace, Segment } from "./project.js";

export interface DrawItem {
  projected: Projected;
  segments?: Segment[];
  faces?: QuadFace[];
  color: string;
}

export function drawWireframe(
  ctx: CanvasRenderingContext2D,
  cam: Camera,
  vp: Viewport,
  items: DrawItem[],
  label: string,
): void {
  ctx.save();
  ctx.beginPath();
  ctx.rect(vp.x, vp.y, vp.width, vp.height);
  ctx.clip();
  ctx.clearRect(vp.x, vp.y, vp.width, vp.height);
  ctx.strokeStyle = "#233";
  ctx.strokeRect(vp.x + 0.5, vp.y + 0.5, vp.width - 1, vp.height - 1);
  for (const item of items) {
    const v = item.projected.vertices;
    const n = v.length / 3;
    const screen = new Float64Array(n * 3);
    for (let i = 0; i < n; i++) {
      const s = projectPoint(cam, vp, [v[3 * i], v[3 * i + 1], v[3 * i + 2]]);
      screen[3 * i] = s[0];
      screen[3 * i + 1] = s[1];
      screen[3 * i + 2] = s[2];
    }
    ctx.strokeStyle = item.color;
    ctx.lineWidth = 1;
    ctx.beginPath();
    const edge = (a: number, b: number) => {
      if (screen[3 * a + 2] <= 0.05 || screen[3 * b + 2] <= 0.05) return;
      ctx.moveTo(screen[3 * a], screen[3 * a + 1]);
      ctx.lineTo(screen[3 * b], screen[3 * b + 1]);
    };
    for (const [a, b] of item.segments ?? []) edge(a, b);
    for (const [a, b, c, d] of item.faces ?? []) {
      edge(a, b);
      edge(b, c);
      edge(c, d);
      edge(d, a);
    }
    ctx.stroke();
  }
  ctx.fillStyle = "#9ab";
  ctx.font = "12px sans-serif";
  ctx.fillText(label, vp.x + 8, vp.y + 16);
  ctx.restore();
}
