// Scene-model file format shared with the generator pipeline.

export const SUPPORTED_VERSION = 1;

export interface SceneStyle {
  weight?: "normal" | "bold";
  caps?: boolean;
  size?: number;
  fill?: string;
  background?: string;
}

export interface SceneElement {
  id: string;
  kind: "rect" | "text" | "bubble" | "path";
  x: number;
  y: number;
  w: number;
  h: number;
  rot?: number;
  points?: [number, number][];
  text?: string;
  style?: SceneStyle;
  tags?: Record<string, string>;
}

export interface Scene {
  version: number;
  canvas: { w: number; h: number };
  elements: SceneElement[];
}

export class SceneError extends Error {}

/** Parse and validate scene JSON; throws SceneError on malformed input. */
export function parseScene(raw: string): Scene {
  let data: unknown;
  try {
    data = JSON.parse(raw);
  } catch (err) {
    throw new SceneError(`scene file is not valid JSON: ${String(err)}`);
  }
  if (typeof data !== "object" || data === null || Array.isArray(data)) {
    throw new SceneError("scene file must hold a JSON object");
  }
  const scene = data as Partial<Scene>;
  if (scene.version !== SUPPORTED_VERSION) {
    throw new SceneError(`unsupported scene version ${String(scene.version)}`);
  }
  if (
    typeof scene.canvas !== "object" ||
    scene.canvas === null ||
    typeof scene.canvas.w !== "number" ||
    typeof scene.canvas.h !== "number"
  ) {
    throw new SceneError("scene canvas must carry numeric w and h");
  }
  if (!Array.isArray(scene.elements)) {
    throw new SceneError("scene elements must be an array");
  }
  const ids = new Set<string>();
  for (const el of scene.elements) {
    if (typeof el.id !== "string" || typeof el.kind !== "string") {
      throw new SceneError("every element needs an id and a kind");
    }
    if (ids.has(el.id)) {
      throw new SceneError(`duplicate element id ${el.id}`);
    }
    ids.add(el.id);
  }
  return scene as Scene;
}
