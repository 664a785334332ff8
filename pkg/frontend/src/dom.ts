// SVG DOM construction for a loaded scene, mirroring the file emitter's
// geometry: text boxes anchor at their top-left with the baseline at
// y + 0.8 * size; backgrounds paint behind their text run.

import type { Scene, SceneElement } from "./scene.js";

const SVG_NS = "http://www.w3.org/2000/svg";
const ASCENT_EM = 0.8;
const FONT_STACK = "Helvetica, Arial, sans-serif";

export function renderScene(scene: Scene, host: SVGSVGElement): void {
  host.innerHTML = "";
  host.setAttribute("viewBox", `0 0 ${scene.canvas.w} ${scene.canvas.h}`);
  host.setAttribute("width", String(scene.canvas.w));
  host.setAttribute("height", String(scene.canvas.h));
  const group = document.createElementNS(SVG_NS, "g");
  for (const el of scene.elements) {
    group.appendChild(renderElement(el));
  }
  host.appendChild(group);
}

function renderElement(el: SceneElement): SVGElement {
  const style = el.style ?? {};
  const fill = style.fill ?? "#000000";
  let node: SVGElement;
  switch (el.kind) {
    case "rect": {
      node = shape("rect", {
        x: el.x, y: el.y, width: el.w, height: el.h, fill,
      });
      break;
    }
    case "bubble": {
      const r = el.w / 2;
      node = shape("circle", { cx: el.x + r, cy: el.y + el.h / 2, r, fill });
      break;
    }
    case "path": {
      const points = (el.points ?? []).map(([x, y]) => `${x},${y}`).join(" ");
      node = shape("polyline", {
        points, fill: "none", stroke: fill, "stroke-width": 1,
      });
      break;
    }
    case "text": {
      const group = document.createElementNS(SVG_NS, "g");
      const size = style.size ?? 0;
      const baseline = el.y + ASCENT_EM * size;
      if (style.background) {
        group.appendChild(
          shape("rect", {
            x: el.x, y: el.y, width: el.w, height: el.h, fill: style.background,
          }),
        );
      }
      const text = shape("text", {
        x: el.x,
        y: baseline,
        "font-family": FONT_STACK,
        "font-size": size,
        fill,
      });
      if (style.weight === "bold") {
        text.setAttribute("font-weight", "bold");
      }
      if (el.rot !== undefined && el.rot !== 0) {
        text.setAttribute("transform", `rotate(${el.rot} ${el.x} ${baseline})`);
      }
      text.textContent = el.text ?? "";
      group.appendChild(text);
      node = group;
      break;
    }
    default:
      node = document.createElementNS(SVG_NS, "g");
  }
  node.setAttribute("id", el.id);
  if (el.tags) {
    for (const [tag, value] of Object.entries(el.tags)) {
      node.setAttribute(`data-${tag}`, value);
    }
  }
  return node;
}

function shape(name: string, attrs: Record<string, string | number>): SVGElement {
  const node = document.createElementNS(SVG_NS, name);
  for (const [key, value] of Object.entries(attrs)) {
    node.setAttribute(key, String(value));
  }
  return node;
}

/** Toggle the highlight class so search hits pop without moving anything. */
export function applyHighlights(host: SVGSVGElement, ids: ReadonlySet<string>): void {
  for (const node of host.querySelectorAll("[id]")) {
    node.classList.toggle("hit", ids.has(node.id));
  }
}

/** Hide filtered-out elements; nodes are never removed from the DOM. */
export function applyVisibility(host: SVGSVGElement, hidden: ReadonlySet<string>): void {
  for (const node of host.querySelectorAll("[id]")) {
    node.classList.toggle("filtered", hidden.has(node.id));
  }
}
