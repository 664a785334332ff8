// @vitest-environment jsdom

import { readFileSync } from "node:fs";
import { dirname, join } from "node:path";
import { fileURLToPath } from "node:url";

import { describe, expect, it } from "vitest";

import { applyHighlights, applyVisibility, renderScene } from "../src/dom.js";
import { parseScene } from "../src/scene.js";
import { searchIds } from "../src/state.js";

const here = dirname(fileURLToPath(import.meta.url));
const raw = readFileSync(join(here, "fixtures", "listing_scene.json"), "utf-8");

function host(): SVGSVGElement {
  document.body.innerHTML = '<svg id="canvas"></svg>';
  return document.getElementById("canvas") as unknown as SVGSVGElement;
}

describe("scene rendering", () => {
  it("renders one DOM node per scene element, in paint order", () => {
    const scene = parseScene(raw);
    const svg = host();
    renderScene(scene, svg);
    const group = svg.firstElementChild!;
    expect(group.children.length).toBe(scene.elements.length);
    const ids = [...group.children].map((node) => node.id);
    expect(ids).toEqual(scene.elements.map((el) => el.id));
  });

  it("renders an empty scene as an empty canvas without error", () => {
    const scene = parseScene('{"version":1,"canvas":{"w":10.000,"h":5.000},"elements":[]}');
    const svg = host();
    renderScene(scene, svg);
    expect(svg.getAttribute("viewBox")).toBe("0 0 10 5");
    expect(svg.firstElementChild!.children.length).toBe(0);
  });

  it("search emphasis and filtering toggle classes without removing nodes", () => {
    const scene = parseScene(raw);
    const svg = host();
    renderScene(scene, svg);
    const before = svg.querySelectorAll("[id]").length;

    const hits = searchIds(scene, "child");
    applyHighlights(svg, hits);
    expect(svg.querySelectorAll(".hit").length).toBe(hits.size);

    applyVisibility(svg, new Set(scene.elements.slice(0, 5).map((el) => el.id)));
    expect(svg.querySelectorAll(".filtered").length).toBe(5);
    expect(svg.querySelectorAll("[id]").length).toBe(before);

    applyVisibility(svg, new Set());
    expect(svg.querySelectorAll(".filtered").length).toBe(0);
  });

  it("carries tags onto data attributes", () => {
    const scene = parseScene(raw);
    const svg = host();
    renderScene(scene, svg);
    const person = scene.elements.find((el) => el.tags?.level === "person")!;
    const node = svg.querySelector(`[id="${person.id}"]`)!;
    expect(node.getAttribute("data-verdict")).toBe(person.tags!.verdict);
  });
});
