"""All geometry: treemap, listing flow, matrix layouts, bar rows, skim
overlay, and text on a path.

Every operation is a pure function of (model, config, metrics) and produces
a DocumentModel whose element order is the paint order. Text never moves
between runs: re-running a layout on equal inputs yields an element-by-
element identical document.
"""

from __future__ import annotations

import json
import math
import re
from dataclasses import dataclass, field, fields, replace
from functools import lru_cache
from importlib import resources
from pathlib import Path
from typing import Mapping, Sequence

from .corpus import Gender, Paragraph, SongRecord, Verdict
from .errors import InputError, LayoutOverflowError
from .repeats import KeywordMatch
from .vizmodel import (
    DocumentBuilder,
    DocumentModel,
    Element,
    HierarchyNode,
    HighlightSpan,
    MatrixModel,
    Style,
    q3,
)

# text baseline sits this far (in em) below the top of a text box
ASCENT_EM = 0.8


# ---------------------------------------------------------------------------
# Font metrics
# ---------------------------------------------------------------------------


@dataclass(frozen=True, eq=False)
class FontMetrics:
    """Per-character advance widths in em units for one reference typeface.

    Unmapped whitespace measures like a space; any other unmapped character
    falls back to default_advance. Instances compare by identity so they can
    key caches.
    """

    advances: Mapping[str, float]
    default_advance: float = 0.6
    line_height: float = 1.2

    def em_width(self, text: str) -> float:
        adv = self.advances
        default = self.default_advance
        space = adv.get(" ", default)
        total = 0.0
        for ch in text:
            a = adv.get(ch)
            if a is None:
                a = space if ch.isspace() else default
            total += a
        return total


def parse_metrics(text: str) -> FontMetrics:
    advances: dict[str, float] = {}
    for n, line in enumerate(text.split("\n"), start=1):
        if line == "":
            continue
        if "\t" not in line:
            raise InputError(f"metrics line {n}: expected char<TAB>advance")
        ch, _, value = line.partition("\t")
        if len(ch) != 1:
            raise InputError(f"metrics line {n}: key must be a single character")
        try:
            advance = float(value)
        except ValueError as exc:
            raise InputError(f"metrics line {n}: bad advance {value!r}") from exc
        if advance <= 0:
            raise InputError(f"metrics line {n}: advance must be positive")
        advances[ch] = advance
    return FontMetrics(advances=advances)


def load_metrics(path: str | Path) -> FontMetrics:
    return parse_metrics(Path(path).read_text(encoding="utf-8"))


@lru_cache(maxsize=1)
def default_metrics() -> FontMetrics:
    data = resources.files("littext").joinpath("data/font_metrics.tsv").read_text(
        encoding="utf-8"
    )
    return parse_metrics(data)


def measure(text: str, size_pt: float, metrics: FontMetrics) -> float:
    """Width in px of text at the given size: size times summed advances."""
    return size_pt * metrics.em_width(text)


# ---------------------------------------------------------------------------
# Config
# ---------------------------------------------------------------------------

DEFAULT_VERDICT_COLORS: dict[str, str] = {
    "Homicide": "#C00000",
    "Suicide": "#7030A0",
    "Accident": "#7F6000",
    "Natural": "#404040",
    "Undetermined": "#808080",
}

DEFAULT_GENDER_BACKGROUNDS: dict[str, str | None] = {
    "Female": "#F8E0E0",
    "Male": "#E0E8F8",
    "Unknown": None,
}

DEFAULT_PALETTE: tuple[str, ...] = (
    "#FFB347",
    "#9ED79E",
    "#9BD3DD",
    "#F2A6D8",
    "#D9C189",
    "#B9B2E8",
)


@dataclass(frozen=True)
class LayoutConfig:
    canvas_w: float = 1280.0
    canvas_h: float = 720.0
    margin: float = 24.0
    min_font_pt: float = 6.0
    verb_pt: float = 14.0
    object_pt: float = 11.0
    person_pt: float = 9.0
    columns: int = 4
    verdict_colors: Mapping[str, str] = field(
        default_factory=lambda: dict(DEFAULT_VERDICT_COLORS)
    )
    gender_backgrounds: Mapping[str, str | None] = field(
        default_factory=lambda: dict(DEFAULT_GENDER_BACKGROUNDS)
    )
    palette: tuple[str, ...] = DEFAULT_PALETTE
    bubble_max_radius: float = 40.0
    bar_plot_width: float = 600.0
    treemap_verb_pt: float = 22.0
    treemap_object_pt: float = 11.0
    matrix_header_pt: float = 10.0
    cell_pt: float = 6.0
    body_pt: float = 11.0
    skim_pt: float = 36.0
    bar_text_pt: float = 11.0
    path_pt: float = 14.0
    ramp_dark: str = "#14364F"
    ramp_bright: str = "#4FC3F7"
    treemap_label_color: str = "#FFFFFF"
    treemap_object_color: str = "#1A1A1A"
    bubble_color: str = "#5B8DB8"
    grid_color: str = "#CCCCCC"
    bar_color: str = "#7F7FFF"
    skim_color: str = "#D9D9D9"
    path_color: str = "#4472C4"

    def __post_init__(self) -> None:
        if self.min_font_pt <= 0:
            raise InputError("min_font_pt must be positive")
        if self.columns < 1:
            raise InputError("columns must be at least 1")
        missing = {v.value for v in Verdict} - set(self.verdict_colors)
        if missing:
            raise InputError(f"verdict_colors missing entries for: {sorted(missing)}")
        missing = {g.value for g in Gender} - set(self.gender_backgrounds)
        if missing:
            raise InputError(f"gender_backgrounds missing entries for: {sorted(missing)}")
        if not self.palette:
            raise InputError("palette must not be empty")


def load_config(path: str | Path) -> LayoutConfig:
    """Load a JSON config; absent keys keep their defaults, map entries merge."""
    try:
        raw = json.loads(Path(path).read_text(encoding="utf-8"))
    except json.JSONDecodeError as exc:
        raise InputError(f"config is not valid JSON: {exc}") from exc
    if not isinstance(raw, dict):
        raise InputError("config must be a JSON object")
    known = {f.name for f in fields(LayoutConfig)}
    unknown = set(raw) - known
    if unknown:
        raise InputError(f"unknown config keys: {sorted(unknown)}")
    kwargs = dict(raw)
    if "verdict_colors" in kwargs:
        merged = dict(DEFAULT_VERDICT_COLORS)
        merged.update(kwargs["verdict_colors"])
        kwargs["verdict_colors"] = merged
    if "gender_backgrounds" in kwargs:
        merged_g = dict(DEFAULT_GENDER_BACKGROUNDS)
        merged_g.update(kwargs["gender_backgrounds"])
        kwargs["gender_backgrounds"] = merged_g
    if "palette" in kwargs:
        kwargs["palette"] = tuple(kwargs["palette"])
    return LayoutConfig(**kwargs)


# ---------------------------------------------------------------------------
# Rect and squarified tiling
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class Rect:
    x: float
    y: float
    w: float
    h: float

    @property
    def area(self) -> float:
        return self.w * self.h

    def inset(self, pad: float) -> "Rect":
        return Rect(
            self.x + pad, self.y + pad, max(0.0, self.w - 2 * pad), max(0.0, self.h - 2 * pad)
        )


def squarify(node: HierarchyNode, rect: Rect) -> list[tuple[HierarchyNode, Rect]]:
    """Recursive squarified tiling of all descendants of node into rect.

    At each level the children (taken in their stored order) are packed into
    rows along the shorter side; a child joins the current row only while it
    does not worsen the row's worst aspect ratio. Child area is the parent
    area scaled by count share, so zero-count nodes become zero-area tiles.
    """
    if rect.w < 0 or rect.h < 0:
        raise InputError("squarify rect must be non-degenerate")
    out: list[tuple[HierarchyNode, Rect]] = []
    _squarify_into(node, rect, out)
    return out


def _squarify_into(
    node: HierarchyNode, rect: Rect, out: list[tuple[HierarchyNode, Rect]]
) -> None:
    if not node.children:
        return
    tiles = tile_children([c.count for c in node.children], rect)
    for child, tile in zip(node.children, tiles):
        out.append((child, tile))
        _squarify_into(child, tile, out)


def tile_children(weights: Sequence[float], rect: Rect) -> list[Rect]:
    """One level of squarified tiling: a rect per weight, exactly covering rect."""
    total = float(sum(weights))
    tiles: list[Rect] = [Rect(rect.x, rect.y, 0.0, 0.0)] * len(weights)
    if total <= 0 or rect.area <= 0:
        return tiles
    scale = rect.area / total
    live = [(i, w * scale) for i, w in enumerate(weights) if w > 0]

    remaining = rect
    start = 0
    while start < len(live):
        short = min(remaining.w, remaining.h)
        row = [live[start][1]]
        end = start + 1
        while end < len(live):
            candidate = row + [live[end][1]]
            if _worst_ratio(candidate, short) <= _worst_ratio(row, short):
                row.append(live[end][1])
                end += 1
            else:
                break
        row_sum = sum(row)
        thickness = row_sum / short if short > 0 else 0.0
        if remaining.w >= remaining.h:
            # vertical strip on the left
            cy = remaining.y
            for k in range(start, end):
                item_h = live[k][1] / thickness if thickness > 0 else 0.0
                tiles[live[k][0]] = Rect(remaining.x, cy, thickness, item_h)
                cy += item_h
            remaining = Rect(
                remaining.x + thickness,
                remaining.y,
                max(0.0, remaining.w - thickness),
                remaining.h,
            )
        else:
            # horizontal strip on the top
            cx = remaining.x
            for k in range(start, end):
                item_w = live[k][1] / thickness if thickness > 0 else 0.0
                tiles[live[k][0]] = Rect(cx, remaining.y, item_w, thickness)
                cx += item_w
            remaining = Rect(
                remaining.x,
                remaining.y + thickness,
                remaining.w,
                max(0.0, remaining.h - thickness),
            )
        start = end

    # zero-weight tiles sit (degenerate) at the origin of the leftover space
    for i, w in enumerate(weights):
        if w <= 0:
            tiles[i] = Rect(remaining.x, remaining.y, 0.0, 0.0)
    return tiles


def _worst_ratio(row: Sequence[float], side: float) -> float:
    if side <= 0:
        return math.inf
    thickness = sum(row) / side
    if thickness <= 0:
        return math.inf
    worst = 1.0
    for a in row:
        length = a / thickness
        if length <= 0:
            return math.inf
        worst = max(worst, length / thickness, thickness / length)
    return worst


# ---------------------------------------------------------------------------
# Label fitting
# ---------------------------------------------------------------------------


def fit_label(
    text: str,
    rect: Rect,
    style: Style,
    metrics: FontMetrics,
    min_font_pt: float,
    *,
    id: str = "label",
    tags: Mapping[str, str] | None = None,
) -> Element | None:
    """Largest label of the given style that fits the rect, centered.

    The size is capped by style.size; when even the best fit falls below
    min_font_pt the label is skipped (None). Text is never truncated.
    """
    if not text or rect.w <= 0 or rect.h <= 0:
        return None
    em_w = metrics.em_width(text)
    size = style.size
    if em_w > 0:
        size = min(size, rect.w / em_w)
    size = min(size, rect.h / metrics.line_height)
    if size + 1e-9 < min_font_pt:
        return None
    w = em_w * size
    h = metrics.line_height * size
    return Element(
        id=id,
        kind="text",
        x=q3(rect.x + (rect.w - w) / 2),
        y=q3(rect.y + (rect.h - h) / 2),
        w=q3(w),
        h=q3(h),
        text=text,
        style=replace(style, size=q3(size)),
        tags=dict(tags) if tags else {},
    )


# ---------------------------------------------------------------------------
# Treemap
# ---------------------------------------------------------------------------


def _lerp_color(dark: str, bright: str, t: float) -> str:
    t = min(1.0, max(0.0, t))
    d = [int(dark[i : i + 2], 16) for i in (1, 3, 5)]
    b = [int(bright[i : i + 2], 16) for i in (1, 3, 5)]
    return "#%02X%02X%02X" % tuple(round(dv + (bv - dv) * t) for dv, bv in zip(d, b))


def layout_treemap(
    hierarchy: HierarchyNode, config: LayoutConfig, metrics: FontMetrics | None = None
) -> DocumentModel:
    """Verb tiles colored by a count brightness ramp, object tiles labeled
    inside them; person leaves are not drawn (their tiles are too small to
    carry readable text by construction)."""
    metrics = metrics or default_metrics()
    b = DocumentBuilder(config.canvas_w, config.canvas_h)
    if hierarchy.count <= 0 or not hierarchy.children:
        return b.build()
    pad = 2.0
    canvas_rect = Rect(0.0, 0.0, config.canvas_w, config.canvas_h)
    verb_tiles = tile_children([c.count for c in hierarchy.children], canvas_rect)
    max_count = max(c.count for c in hierarchy.children)
    for i, (verb, tile) in enumerate(zip(hierarchy.children, verb_tiles)):
        if verb.count <= 0:
            continue
        fill = _lerp_color(config.ramp_dark, config.ramp_bright, verb.count / max_count)
        vtags = {"level": "verb", "verb": verb.label, "count": str(verb.count)}
        b.add(f"verb-{i}", "rect", x=tile.x, y=tile.y, w=tile.w, h=tile.h,
              style=Style(fill=fill), tags=vtags)
        strip_h = min(metrics.line_height * config.treemap_verb_pt + 2 * pad, tile.h)
        label = fit_label(
            verb.label.upper(),
            Rect(tile.x, tile.y, tile.w, strip_h).inset(pad),
            Style(weight="bold", caps=True, size=config.treemap_verb_pt,
                  fill=config.treemap_label_color),
            metrics,
            config.min_font_pt,
            id=f"verb-{i}-label",
            tags=vtags,
        )
        body = tile
        if label is not None:
            b.extend([label])
            body = Rect(tile.x, tile.y + strip_h, tile.w, max(0.0, tile.h - strip_h))
        object_tiles = tile_children([o.count for o in verb.children], body)
        for j, (obj, otile) in enumerate(zip(verb.children, object_tiles)):
            if obj.count <= 0 or not obj.label:
                continue
            olabel = fit_label(
                obj.label,
                otile.inset(pad),
                Style(weight="bold", size=config.treemap_object_pt,
                      fill=config.treemap_object_color),
                metrics,
                config.min_font_pt,
                id=f"verb-{i}-obj-{j}",
                tags={"level": "object", "verb": verb.label, "object": obj.label,
                      "count": str(obj.count)},
            )
            if olabel is not None:
                b.extend([olabel])
    return b.build()


# ---------------------------------------------------------------------------
# Listing layout
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class _Run:
    text: str
    size: float
    weight: str
    caps: bool
    fill: str
    background: str | None
    new_line: bool
    id: str
    tags: Mapping[str, str]


def _listing_runs(hierarchy: HierarchyNode, config: LayoutConfig) -> list[_Run]:
    runs: list[_Run] = []
    person_n = 0
    for vi, verb in enumerate(hierarchy.children):
        runs.append(
            _Run(
                text=verb.label.upper(),
                size=config.verb_pt,
                weight="bold",
                caps=True,
                fill="#000000",
                background=None,
                new_line=True,
                id=f"verb-{vi}",
                tags={"level": "verb", "verb": verb.label, "count": str(verb.count)},
            )
        )
        for oi, obj in enumerate(verb.children):
            if obj.label:
                runs.append(
                    _Run(
                        text=obj.label.lower(),
                        size=config.object_pt,
                        weight="bold",
                        caps=False,
                        fill="#000000",
                        background=None,
                        new_line=False,
                        id=f"verb-{vi}-obj-{oi}",
                        tags={"level": "object", "verb": verb.label, "object": obj.label,
                              "count": str(obj.count)},
                    )
                )
            for person in obj.children:
                tags = {
                    "level": "person",
                    "verb": verb.label,
                    "object": obj.label,
                    "verdict": person.tags.get("verdict", ""),
                    "gender": person.tags.get("gender", ""),
                }
                runs.append(
                    _Run(
                        text=person.label,
                        size=config.person_pt,
                        weight="normal",
                        caps=False,
                        fill=config.verdict_colors[person.tags["verdict"]],
                        background=config.gender_backgrounds[person.tags["gender"]],
                        new_line=False,
                        id=f"person-{person_n}",
                        tags=tags,
                    )
                )
                person_n += 1
    return runs


def _flow_runs(
    runs: Sequence[_Run],
    config: LayoutConfig,
    metrics: FontMetrics,
    scale: float,
    height: float,
) -> list[Element] | None:
    """Place runs into columns at the given scale; None when they overflow."""
    cols = config.columns
    margin = config.margin
    col_w = (config.canvas_w - 2 * margin - (cols - 1) * margin) / cols
    if col_w <= 0:
        return None

    def col_x(c: int) -> float:
        return margin + c * (col_w + margin)

    elements: list[Element] = []
    col = 0
    x = col_x(0)
    y = margin
    line_h = 0.0

    def newline() -> None:
        nonlocal x, y, line_h
        y += line_h
        x = col_x(col)
        line_h = 0.0

    for run in runs:
        size = run.size * scale
        w = measure(run.text, size, metrics)
        lh = metrics.line_height * size
        if run.new_line and x > col_x(col):
            newline()
        if x + w > col_x(col) + col_w + 1e-9 and x > col_x(col):
            newline()
        if y + lh > height - margin + 1e-9:
            col += 1
            if col >= cols:
                return None
            x = col_x(col)
            y = margin
            line_h = 0.0
        elements.append(
            Element(
                id=run.id,
                kind="text",
                x=q3(x),
                y=q3(y),
                w=q3(w),
                h=q3(lh),
                text=run.text,
                style=Style(
                    weight=run.weight,
                    caps=run.caps,
                    size=q3(size),
                    fill=run.fill,
                    background=run.background,
                ),
                tags=dict(run.tags),
            )
        )
        line_h = max(line_h, lh)
        x += w + measure(" ", size, metrics)
    return elements


def layout_listing(
    hierarchy: HierarchyNode, config: LayoutConfig, metrics: FontMetrics | None = None
) -> DocumentModel:
    """Multi-column dictionary-style flow of the full hierarchy.

    Every person name is rendered in full. When the flow overflows the
    canvas the whole layout is scaled down uniformly, stopping once the
    smallest level font reaches min_font_pt; past that the operation fails
    with the canvas height that would have been required.
    """
    metrics = metrics or default_metrics()
    runs = _listing_runs(hierarchy, config)
    b = DocumentBuilder(config.canvas_w, config.canvas_h)
    if not runs:
        return b.build()

    placed = _flow_runs(runs, config, metrics, 1.0, config.canvas_h)
    if placed is None:
        floor = min(1.0, config.min_font_pt / min(config.verb_pt, config.object_pt,
                                                  config.person_pt))
        at_floor = _flow_runs(runs, config, metrics, floor, config.canvas_h)
        if at_floor is None:
            required = _required_height(runs, config, metrics, floor)
            raise LayoutOverflowError(
                f"text does not fit a {config.canvas_w:g}x{config.canvas_h:g} canvas at the "
                f"minimum font size; a canvas height of {required:g} would be needed",
                required_height=required,
            )
        lo, hi = floor, 1.0
        placed = at_floor
        for _ in range(25):
            mid = (lo + hi) / 2
            attempt = _flow_runs(runs, config, metrics, mid, config.canvas_h)
            if attempt is None:
                hi = mid
            else:
                lo = mid
                placed = attempt
    b.extend(placed)
    return b.build()


def _required_height(
    runs: Sequence[_Run], config: LayoutConfig, metrics: FontMetrics, scale: float
) -> float:
    lo = config.canvas_h
    hi = 2 * config.margin + sum(metrics.line_height * r.size * scale for r in runs)
    for _ in range(40):
        mid = (lo + hi) / 2
        if _flow_runs(runs, config, metrics, scale, mid) is None:
            lo = mid
        else:
            hi = mid
    return math.ceil(hi)


# ---------------------------------------------------------------------------
# Matrix layouts
# ---------------------------------------------------------------------------


@lru_cache(maxsize=64)
def _grid_frame(
    speakers: tuple[str, ...],
    canvas_w: float,
    canvas_h: float,
    margin: float,
    header_pt: float,
    grid_color: str,
    metrics: FontMetrics,
) -> tuple[tuple[Element, ...], float, float, float, Mapping[str, int]]:
    """Precomputed grid lines and headers for a speaker set (pure, cached)."""
    n = len(speakers)
    pad = 4.0
    lh = metrics.line_height * header_pt
    left = max(measure(s, header_pt, metrics) for s in speakers) + pad
    top = lh + pad
    cell = min(
        (canvas_w - 2 * margin - left) / n,
        (canvas_h - 2 * margin - top) / n,
    )
    ox = margin + left
    oy = margin + top
    span = n * cell
    b = DocumentBuilder(canvas_w, canvas_h)
    for i in range(n + 1):
        b.add(f"grid-h{i}", "path",
              points=[(ox, oy + i * cell), (ox + span, oy + i * cell)],
              style=Style(fill=grid_color))
        b.add(f"grid-v{i}", "path",
              points=[(ox + i * cell, oy), (ox + i * cell, oy + span)],
              style=Style(fill=grid_color))
    for i, name in enumerate(speakers):
        w = measure(name, header_pt, metrics)
        b.add(f"row-{i}", "text",
              x=ox - pad - w, y=oy + i * cell + (cell - lh) / 2, w=w, h=lh,
              text=name, style=Style(size=header_pt),
              tags={"speaker": name, "axis": "from"})
        b.add(f"col-{i}", "text",
              x=ox + i * cell + (cell - w) / 2, y=oy - pad - lh, w=w, h=lh,
              text=name, style=Style(size=header_pt),
              tags={"speaker": name, "axis": "to"})
    index = {name: i for i, name in enumerate(speakers)}
    return b.build().elements, ox, oy, cell, index


def _matrix_grid(
    matrix: MatrixModel, config: LayoutConfig, metrics: FontMetrics, b: DocumentBuilder
) -> tuple[float, float, float, Mapping[str, int]]:
    """Grid frame plus headers; returns (origin_x, origin_y, cell, speaker index)."""
    elements, ox, oy, cell, index = _grid_frame(
        matrix.speakers,
        config.canvas_w,
        config.canvas_h,
        config.margin,
        config.matrix_header_pt,
        config.grid_color,
        metrics,
    )
    b.extend_validated(elements)
    return ox, oy, cell, index


def layout_matrix_bubbles(
    matrix: MatrixModel, config: LayoutConfig, metrics: FontMetrics | None = None
) -> DocumentModel:
    """Speaker-by-speaker grid with one bubble per nonempty cell.

    Bubble area is proportional to the cell word count, so the radius is
    max_radius * sqrt(count / max_count); the loudest cell reaches exactly
    the configured maximum radius.
    """
    metrics = metrics or default_metrics()
    b = DocumentBuilder(config.canvas_w, config.canvas_h)
    if not matrix.speakers:
        return b.build()
    ox, oy, cell, _ = _matrix_grid(matrix, config, metrics, b)
    max_count = max((c.word_count for c in matrix.cells.values()), default=0)
    if max_count <= 0:
        return b.build()
    for i, frm in enumerate(matrix.speakers):
        for j, to in enumerate(matrix.speakers):
            data = matrix.cells.get((frm, to))
            if data is None or data.word_count <= 0:
                continue
            r = config.bubble_max_radius * math.sqrt(data.word_count / max_count)
            cx = ox + (j + 0.5) * cell
            cy = oy + (i + 0.5) * cell
            b.add(f"bubble-{i}-{j}", "bubble",
                  x=cx - r, y=cy - r, w=2 * r, h=2 * r,
                  style=Style(fill=config.bubble_color),
                  tags={"from": frm, "to": to, "words": str(data.word_count)})
    return b.build()


def wrap_spans(
    text: str, width: float, size: float, metrics: FontMetrics
) -> list[tuple[int, int]]:
    """Greedy line wrap: character ranges of text per line.

    Breaks between whitespace-separated words; a single word wider than the
    line is chopped at character granularity so no line exceeds width.
    """
    return list(_wrap_spans_cached(text, width, size, metrics))


@lru_cache(maxsize=4096)
def _wrap_spans_cached(
    text: str, width: float, size: float, metrics: FontMetrics
) -> tuple[tuple[int, int], ...]:
    words = [(m.start(), m.end()) for m in re.finditer(r"\S+", text)]
    lines: list[tuple[int, int]] = []
    i = 0
    while i < len(words):
        start, end = words[i]
        if measure(text[start:end], size, metrics) > width + 1e-9:
            e = start + 1
            while e < end and measure(text[start : e + 1], size, metrics) <= width + 1e-9:
                e += 1
            lines.append((start, e))
            if e < end:
                words[i] = (e, end)
                continue
            i += 1
            continue
        j = i + 1
        while j < len(words) and measure(text[start : words[j][1]], size, metrics) <= width + 1e-9:
            end = words[j][1]
            j += 1
        lines.append((start, end))
        i = j
    return tuple(lines)


ELLIPSIS = "…"


def layout_matrix_text(
    matrix: MatrixModel, config: LayoutConfig, metrics: FontMetrics | None = None
) -> DocumentModel:
    """Grid whose nonempty cells hold their dialogue as wrapped small text.

    A nonempty cell expands rightward across the run of empty cells that
    follows it (stopping at the next nonempty cell or the grid edge). Text
    that exceeds the cell height is cut with a terminal ellipsis. Phrase
    highlight spans become background-colored sub-runs.
    """
    metrics = metrics or default_metrics()
    b = DocumentBuilder(config.canvas_w, config.canvas_h)
    if not matrix.speakers:
        return b.build()
    ox, oy, cell, index = _matrix_grid(matrix, config, metrics, b)
    speakers = matrix.speakers
    n = len(speakers)
    pad = 2.0
    size = q3(config.cell_pt)
    lh = metrics.line_height * config.cell_pt
    qlh = q3(lh)
    plain = Style(size=size)
    styles: dict[str, Style] = {}
    occupied = [[False] * n for _ in range(n)]
    for (frm, to), data in matrix.cells.items():
        if data.text:
            occupied[index[frm]][index[to]] = True

    out: list[Element] = []
    for i in range(n):
        row = occupied[i]
        for j in range(n):
            if not row[j]:
                continue
            span_cols = 1
            while j + span_cols < n and not row[j + span_cols]:
                span_cols += 1
            data = matrix.cells[(speakers[i], speakers[j])]
            rx = ox + j * cell + pad
            ry = oy + i * cell + pad
            rw = span_cols * cell - 2 * pad
            rh = cell - 2 * pad
            max_lines = int(rh // lh)
            if max_lines < 1 or rw <= 0:
                continue
            lines = wrap_spans(data.text, rw, config.cell_pt, metrics)
            truncated = len(lines) > max_lines
            lines = lines[:max_lines]
            if truncated and lines:
                a, e = lines[-1]
                while e > a and measure(
                    data.text[a:e] + ELLIPSIS, config.cell_pt, metrics
                ) > rw + 1e-9:
                    e -= 1
                lines[-1] = (a, e)
            tags = {"from": speakers[i], "to": speakers[j], "span": str(span_cols)}
            for li, (a, e) in enumerate(lines):
                x = rx
                y = q3(ry + li * lh)
                segs = (
                    ((a, e, None),) if not data.spans else _split_segments(a, e, data.spans)
                )
                for si, (sa, se, color) in enumerate(segs):
                    seg_text = data.text[sa:se]
                    w = measure(seg_text, config.cell_pt, metrics)
                    if color is None:
                        style = plain
                    else:
                        style = styles.get(color)
                        if style is None:
                            style = styles[color] = Style(size=size, background=color)
                    out.append(
                        Element(
                            id=f"cell-{i}-{j}-l{li}-s{si}", kind="text",
                            x=q3(x), y=y, w=q3(w), h=qlh,
                            text=seg_text, style=style, tags=tags,
                        )
                    )
                    x += w
                if truncated and li == len(lines) - 1:
                    out.append(
                        Element(
                            id=f"cell-{i}-{j}-ellipsis", kind="text",
                            x=q3(x), y=y, w=q3(measure(ELLIPSIS, config.cell_pt, metrics)),
                            h=qlh, text=ELLIPSIS, style=plain, tags=tags,
                        )
                    )
    b.extend_validated(out)
    return b.build()


def _split_segments(
    a: int, e: int, spans: Sequence[HighlightSpan]
) -> list[tuple[int, int, str | None]]:
    """Split [a, e) at highlight span edges; first covering span colors a cut."""
    cuts = {a, e}
    for hs in spans:
        if hs.start < e and hs.end > a:
            cuts.add(max(a, hs.start))
            cuts.add(min(e, hs.end))
    edges = sorted(cuts)
    segs: list[tuple[int, int, str | None]] = []
    for sa, se in zip(edges, edges[1:]):
        color = None
        for hs in spans:
            if hs.start <= sa and se <= hs.end:
                color = hs.color
                break
        segs.append((sa, se, color))
    return segs


# ---------------------------------------------------------------------------
# Bar rows
# ---------------------------------------------------------------------------


def layout_bar_rows(
    songs: Sequence[SongRecord],
    matches: Sequence[Sequence[KeywordMatch]],
    config: LayoutConfig,
    metrics: FontMetrics | None = None,
) -> DocumentModel:
    """One text row per song over a sales bar and keyword highlight patches.

    matches[i] holds the KeywordMatch list for the composed row text of
    songs[i] (see bar_row_text). Paint order per row: bar, highlights, text.
    """
    metrics = metrics or default_metrics()
    margin = config.margin
    size = config.bar_text_pt
    lh = metrics.line_height * size
    row_pad = 2.0
    row_h = lh + 2 * row_pad
    height = max(config.canvas_h, 2 * margin + len(songs) * row_h)
    b = DocumentBuilder(config.canvas_w, height)
    if not songs:
        return b.build()
    max_sales = max(s.sales for s in songs)
    for i, song in enumerate(songs):
        y = margin + i * row_h
        bar_w = config.bar_plot_width * (song.sales / max_sales) if max_sales > 0 else 0.0
        text = bar_row_text(song)
        row_tags = {"rank": str(song.rank), "artist": song.artist, "title": song.title,
                    "sales": str(song.sales)}
        b.add(f"bar-{i}", "rect", x=margin, y=y, w=bar_w, h=row_h,
              style=Style(fill=config.bar_color), tags=row_tags)
        tx = margin + 4.0
        for k, km in enumerate(matches[i] if i < len(matches) else ()):
            s0, e0 = km.span
            hx = tx + measure(text[:s0], size, metrics)
            hw = measure(text[s0:e0], size, metrics)
            b.add(f"bar-{i}-hl-{k}", "rect", x=hx, y=y + row_pad, w=hw, h=lh,
                  style=Style(fill=km.color),
                  tags={"keyword": text[s0:e0].lower(), "rank": str(song.rank)})
        b.add(f"bar-{i}-text", "text", x=tx, y=y + row_pad,
              w=measure(text, size, metrics), h=lh, text=text,
              style=Style(size=size), tags=row_tags)
    return b.build()


def bar_row_text(song: SongRecord) -> str:
    return f"{song.artist} – {song.title} – {song.lyric_opening}"


# ---------------------------------------------------------------------------
# Skim overlay
# ---------------------------------------------------------------------------


def layout_skim(
    paragraphs: Sequence[Paragraph],
    summaries: Sequence[tuple[str, str] | None],
    config: LayoutConfig,
    metrics: FontMetrics | None = None,
) -> DocumentModel:
    """Body text flow with a large low-contrast two-word summary painted
    behind each summarized paragraph, vertically centered on its block."""
    metrics = metrics or default_metrics()
    margin = config.margin
    size = config.body_pt
    lh = metrics.line_height * size
    body_w = config.canvas_w - 2 * margin

    blocks: list[list[tuple[int, int]]] = [
        wrap_spans(p.text, body_w, size, metrics) for p in paragraphs
    ]
    content_h = sum(len(lines) * lh for lines in blocks) + max(0, len(blocks) - 1) * lh
    height = max(config.canvas_h, 2 * margin + content_h)
    b = DocumentBuilder(config.canvas_w, height)

    y = margin
    for pi, (para, lines) in enumerate(zip(paragraphs, blocks)):
        block_h = len(lines) * lh
        summary = summaries[pi] if pi < len(summaries) else None
        if summary is not None:
            stext = f"{summary[0]} {summary[1]}"
            sw = measure(stext, config.skim_pt, metrics)
            slh = metrics.line_height * config.skim_pt
            b.add(f"summary-{pi}", "text",
                  x=(config.canvas_w - sw) / 2, y=y + (block_h - slh) / 2,
                  w=sw, h=slh, text=stext,
                  style=Style(size=config.skim_pt, fill=config.skim_color),
                  tags={"paragraph": str(para.index), "role": "summary"})
        for li, (a, e) in enumerate(lines):
            line_text = para.text[a:e]
            b.add(f"para-{pi}-l{li}", "text",
                  x=margin, y=y + li * lh,
                  w=measure(line_text, size, metrics), h=lh, text=line_text,
                  style=Style(size=size),
                  tags={"paragraph": str(para.index), "role": "body"})
        y += block_h + lh
    return b.build()


# ---------------------------------------------------------------------------
# Text on a path
# ---------------------------------------------------------------------------


def layout_text_on_path(
    text: str,
    polyline: Sequence[tuple[float, float]],
    config: LayoutConfig,
    metrics: FontMetrics | None = None,
) -> list[Element]:
    """Place glyphs along the polyline at cumulative-advance arc lengths.

    Each glyph is its own text element, rotated to the tangent of the
    segment it starts on. Text longer than the path is cut with a terminal
    ellipsis (at minimum the ellipsis alone). The polyline itself is the
    first returned element.
    """
    metrics = metrics or default_metrics()
    pts = [(float(x), float(y)) for x, y in polyline]
    if len(pts) < 2:
        raise InputError("path needs at least two points")
    seg_lens = [math.dist(pts[k], pts[k + 1]) for k in range(len(pts) - 1)]
    total = sum(seg_lens)
    if total <= 0:
        raise InputError("path has zero length")

    size = config.path_pt
    glyphs = list(text)
    if measure(text, size, metrics) > total:
        ell_w = measure(ELLIPSIS, size, metrics)
        kept: list[str] = []
        used = 0.0
        for ch in text:
            adv = measure(ch, size, metrics)
            if used + adv + ell_w > total:
                break
            kept.append(ch)
            used += adv
        glyphs = kept + [ELLIPSIS]

    cums = [0.0]
    for sl in seg_lens:
        cums.append(cums[-1] + sl)

    def point_at(s: float) -> tuple[float, float, float]:
        s = min(s, total)
        k = len(seg_lens) - 1
        for idx in range(len(seg_lens)):
            if s < cums[idx + 1] or idx == len(seg_lens) - 1:
                k = idx
                break
        (x0, y0), (x1, y1) = pts[k], pts[k + 1]
        t = (s - cums[k]) / seg_lens[k] if seg_lens[k] > 0 else 0.0
        angle = math.degrees(math.atan2(y1 - y0, x1 - x0))
        return (x0 + (x1 - x0) * t, y0 + (y1 - y0) * t, angle)

    elements: list[Element] = [
        Element(
            id="path", kind="path",
            points=tuple((q3(px), q3(py)) for px, py in pts),
            style=Style(fill=config.path_color),
        )
    ]
    s = 0.0
    for gi, ch in enumerate(glyphs):
        px, py, angle = point_at(s)
        adv = measure(ch, size, metrics)
        elements.append(
            Element(
                id=f"glyph-{gi}", kind="text",
                x=q3(px), y=q3(py - ASCENT_EM * size),
                w=q3(adv), h=q3(metrics.line_height * size),
                rot=q3(angle), text=ch,
                style=Style(size=q3(size)),
                tags={"role": "glyph"},
            )
        )
        s += adv
    return elements
