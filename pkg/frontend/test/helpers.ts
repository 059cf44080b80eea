import { readFileSync, readdirSync } from "node:fs";
import { fileURLToPath } from "node:url";

const SCENES_DIR = fileURLToPath(new URL("../../fixtures/scenes/", import.meta.url));

export function sceneIds(): string[] {
  return JSON.parse(readFileSync(SCENES_DIR + "index.json", "utf8")) as string[];
}

export function sceneText(id: string): string {
  return readFileSync(`${SCENES_DIR}${id}.json`, "utf8");
}

export function sceneDoc(id: string): unknown {
  return JSON.parse(sceneText(id));
}

export function fixturesDoc(id: string): FixturesDoc {
  return JSON.parse(readFileSync(`${SCENES_DIR}${id}.fixtures.json`, "utf8")) as FixturesDoc;
}

export interface FixturesDoc {
  scene: string;
  tolerance: number;
  evaluations: { set: string; env: Record<string, number>; point: number[] }[];
  perspective: { point: number[]; d: number; image: number[] }[];
  dop: { point: number[]; zImage: number[]; wImage: number[] }[];
  rotor: { point: number[]; left: number[]; right: number[]; image: number[] }[];
}

export function maxAbsDiff(a: ArrayLike<number>, b: ArrayLike<number>): number {
  let worst = 0;
  for (let i = 0; i < a.length; i++) {
    worst = Math.max(worst, Math.abs(a[i] - b[i]));
  }
  return worst;
}
