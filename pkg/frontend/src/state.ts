// Pure viewer state: search highlighting and conjunctive tag filtering.
// Nothing here touches the DOM or mutates the loaded scene.

import type { Scene } from "./scene.js";

export interface TagFilter {
  tag: string;
  value: string;
}

export interface ViewerState {
  scene: Scene;
  query: string;
  filters: TagFilter[];
}

/** Ids of text elements whose text contains the query, case-insensitive.
 *  An empty query highlights nothing. */
export function searchIds(scene: Scene, query: string): Set<string> {
  const ids = new Set<string>();
  const needle = query.toLowerCase();
  if (needle === "") {
    return ids;
  }
  for (const el of scene.elements) {
    if (el.kind === "text" && el.text !== undefined) {
      if (el.text.toLowerCase().includes(needle)) {
        ids.add(el.id);
      }
    }
  }
  return ids;
}

/** Ids hidden under the active filters: an element is hidden when any of its
 *  tags contradicts an active filter (same tag, different value). Untagged
 *  elements never contradict, so structure stays visible. */
export function hiddenIds(scene: Scene, filters: readonly TagFilter[]): Set<string> {
  const hidden = new Set<string>();
  if (filters.length === 0) {
    return hidden;
  }
  for (const el of scene.elements) {
    const tags = el.tags;
    if (!tags) {
      continue;
    }
    for (const f of filters) {
      const value = tags[f.tag];
      if (value !== undefined && value !== f.value) {
        hidden.add(el.id);
        break;
      }
    }
  }
  return hidden;
}

export function visibleIds(scene: Scene, filters: readonly TagFilter[]): Set<string> {
  const hidden = hiddenIds(scene, filters);
  const visible = new Set<string>();
  for (const el of scene.elements) {
    if (!hidden.has(el.id)) {
      visible.add(el.id);
    }
  }
  return visible;
}

/** All tag keys and their value sets present in the scene. */
export function tagVocabulary(scene: Scene): Map<string, Set<string>> {
  const vocabulary = new Map<string, Set<string>>();
  for (const el of scene.elements) {
    if (!el.tags) {
      continue;
    }
    for (const [tag, value] of Object.entries(el.tags)) {
      let values = vocabulary.get(tag);
      if (!values) {
        values = new Set<string>();
        vocabulary.set(tag, values);
      }
      values.add(value);
    }
  }
  return vocabulary;
}

export interface ToggleResult {
  filters: TagFilter[];
  warning: string | null;
}

/** Add or remove one (tag, value) filter. Unknown tags are a no-op with a
 *  warning so a stale control cannot blank the view. */
export function toggleFilter(
  scene: Scene,
  filters: readonly TagFilter[],
  tag: string,
  value: string,
  enabled: boolean,
): ToggleResult {
  if (!tagVocabulary(scene).has(tag)) {
    return { filters: [...filters], warning: `unknown tag: ${tag}` };
  }
  const rest = filters.filter((f) => !(f.tag === tag && f.value === value));
  if (enabled) {
    return { filters: [...rest, { tag, value }], warning: null };
  }
  return { filters: rest, warning: null };
}
