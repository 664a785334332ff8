// Viewer shell: load a scene from ?scene= or a file picker, then wire the
// search box and the tag filter chips to the pure state helpers.

import { parseScene, Scene, SceneError } from "./scene.js";
import {
  TagFilter,
  hiddenIds,
  searchIds,
  tagVocabulary,
  toggleFilter,
} from "./state.js";
import { applyHighlights, applyVisibility, renderScene } from "./dom.js";

const svgHost = document.getElementById("canvas") as unknown as SVGSVGElement;
const searchBox = document.getElementById("search") as HTMLInputElement;
const matchCount = document.getElementById("match-count") as HTMLElement;
const filterPanel = document.getElementById("filters") as HTMLElement;
const errorPanel = document.getElementById("error") as HTMLElement;
const warningBadge = document.getElementById("warning") as HTMLElement;
const filePicker = document.getElementById("file") as HTMLInputElement;

let scene: Scene | null = null;
let filters: TagFilter[] = [];

function showError(message: string): void {
  errorPanel.textContent = message;
  errorPanel.hidden = false;
}

function loadScene(raw: string): void {
  errorPanel.hidden = true;
  warningBadge.hidden = true;
  try {
    scene = parseScene(raw);
  } catch (err) {
    scene = null;
    showError(err instanceof SceneError ? err.message : String(err));
    return;
  }
  filters = [];
  renderScene(scene, svgHost);
  buildFilterPanel(scene);
  refresh();
}

function refresh(): void {
  if (!scene) {
    return;
  }
  const hits = searchIds(scene, searchBox.value);
  applyHighlights(svgHost, hits);
  matchCount.textContent = searchBox.value ? `${hits.size} matches` : "";
  applyVisibility(svgHost, hiddenIds(scene, filters));
}

function buildFilterPanel(loaded: Scene): void {
  filterPanel.innerHTML = "";
  const vocabulary = tagVocabulary(loaded);
  const interesting = [...vocabulary.entries()].filter(
    ([, values]) => values.size > 1 && values.size <= 12,
  );
  interesting.sort((a, b) => a[0].localeCompare(b[0]));
  for (const [tag, values] of interesting) {
    const row = document.createElement("div");
    row.className = "filter-row";
    const label = document.createElement("span");
    label.className = "tag-name";
    label.textContent = tag;
    row.appendChild(label);
    for (const value of [...values].sort()) {
      const chip = document.createElement("button");
      chip.className = "chip";
      chip.textContent = value;
      chip.addEventListener("click", () => {
        const active = filters.some((f) => f.tag === tag && f.value === value);
        const result = toggleFilter(loaded, filters, tag, value, !active);
        filters = result.filters;
        if (result.warning) {
          warningBadge.textContent = result.warning;
          warningBadge.hidden = false;
        }
        chip.classList.toggle("active", !active);
        refresh();
      });
      row.appendChild(chip);
    }
    filterPanel.appendChild(row);
  }
}

searchBox.addEventListener("input", refresh);

filePicker.addEventListener("change", () => {
  const file = filePicker.files?.[0];
  if (!file) {
    return;
  }
  file.text().then(loadScene, (err) => showError(String(err)));
});

const params = new URLSearchParams(window.location.search);
const sceneUrl = params.get("scene");
if (sceneUrl) {
  fetch(sceneUrl)
    .then((response) => {
      if (!response.ok) {
        throw new Error(`fetch failed: ${response.status}`);
      }
      return response.text();
    })
    .then(loadScene, (err) => showError(String(err)));
}
