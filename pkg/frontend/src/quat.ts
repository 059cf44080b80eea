/** Quaternion arithmetic on points of R^4, mirroring the engine semantics. */

export type Quat = [number, number, number, number];

export function add(a: Quat, b: Quat): Quat {
  return [a[0] + b[0], a[1] + b[1], a[2] + b[2], a[3] + b[3]];
}

export function sub(a: Quat, b: Quat): Quat {
  return [a[0] - b[0], a[1] - b[1], a[2] - b[2], a[3] - b[3]];
}

/** Quaternionic product ab; a is the left factor. */
export function mul(a: Quat, b: Quat): Quat {
  return [
    a[0] * b[0] - a[1] * b[1] - a[2] * b[2] - a[3] * b[3],
    a[0] * b[1] + a[1] * b[0] + a[2] * b[3] - a[3] * b[2],
    a[0] * b[2] - a[1] * b[3] + a[2] * b[0] + a[3] * b[1],
    a[0] * b[3] + a[1] * b[2] - a[2] * b[1] + a[3] * b[0],
  ];
}

export function conjugate(a: Quat): Quat {
  return [a[0], -a[1], -a[2], -a[3]];
}

export function norm(a: Quat): number {
  return Math.sqrt(a[0] * a[0] + a[1] * a[1] + a[2] * a[2] + a[3] * a[3]);
}

export class ZeroNormError extends Error {}

export function inverse(a: Quat): Quat {
  const n2 = a[0] * a[0] + a[1] * a[1] + a[2] * a[2] + a[3] * a[3];
  if (Math.sqrt(n2) <= 1e-12) {
    throw new ZeroNormError("cannot invert a zero-norm quaternion");
  }
  return [a[0] / n2, -a[1] / n2, -a[2] / n2, -a[3] / n2];
}

export function divideLeft(a: Quat, b: Quat): Quat {
  return mul(inverse(a), b);
}

export function divideRight(b: Quat, a: Quat): Quat {
  return mul(b, inverse(a));
}

/** Isoclinic rotation p -> left * p * right. */
export function rotorApply(left: Quat, right: Quat, p: Quat): Quat {
  return mul(mul(left, p), right);
}

/** Unit quaternion (cos(theta), sin(theta) * axis); axis need not be unit. */
export function axisAngleQuat(axis: [number, number, number], theta: number): Quat {
  const n = Math.hypot(axis[0], axis[1], axis[2]);
  const s = Math.sin(theta) / (n > 0 ? n : 1);
  return [Math.cos(theta), s * axis[0], s * axis[1], s * axis[2]];
}
