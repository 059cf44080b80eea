/** Orbit camera: model 3-space (x, y, w) to 2-D canvas coordinates. */

export interface Camera {
  yaw: number;
  pitch: number;
  distance: number;
  target: [number, number, number];
}

export function defaultCamera(): Camera {
  return { yaw: 0.6, pitch: 0.35, distance: 6, target: [0, 0, 0] };
}

export interface Viewport {
  x: number;
  y: number;
  width: number;
  height: number;
}

/** Returns [sx, sy, depth]; depth > 0 means in front of the camera. */
export function projectPoint(cam: Camera, vp: Viewport, p: [number, number, number]): [number, number, number] {
  const cy = Math.cos(cam.yaw);
  const sy = Math.sin(cam.yaw);
  const cp = Math.cos(cam.pitch);
  const sp = Math.sin(cam.pitch);
  const x = p[0] - cam.target[0];
  const y = p[1] - cam.target[1];
  const z = p[2] - cam.target[2];
  // yaw about the vertical (y) axis, then pitch about the horizontal axis
  const x1 = cy * x + sy * z;
  const z1 = -sy * x + cy * z;
  const y2 = cp * y - sp * z1;
  const z2 = sp * y + cp * z1;
  const depth = cam.distance - z2;
  const f = (0.9 * Math.min(vp.width, vp.height)) / Math.max(depth, 0.05);
  return [vp.x + vp.width / 2 + f * x1, vp.y + vp.height / 2 - f * y2, depth];
}
