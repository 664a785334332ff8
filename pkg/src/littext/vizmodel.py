"""Layout-ready aggregates and the renderer-independent scene model.

The scene model is a flat, ordered list of positioned elements (paint
order). Every numeric field is quantized to 3 decimals at construction so
that equal models serialize to byte-equal scene files.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from enum import Enum
from typing import Mapping, Sequence

from .corpus import Utterance
from .repeats import PhraseSetResult
from .textproc import SvoRecord, TokenKind, tokenize


class Level(Enum):
    ROOT = "Root"
    VERB = "Verb"
    OBJECT = "Object"
    PERSON = "Person"


@dataclass(frozen=True)
class HierarchyNode:
    label: str
    level: Level
    count: int
    children: tuple["HierarchyNode", ...] = ()
    tags: Mapping[str, str] = field(default_factory=dict)


def build_hierarchy(records: Sequence[SvoRecord]) -> HierarchyNode:
    """Group records into the verb > object > person tree.

    Internal counts are the sums of their children; person leaves carry
    verdict and gender tags and count 1. Siblings are ordered by count
    descending, then label ascending (stable for equal pairs).
    """
    verbs: dict[str, dict[str, list[SvoRecord]]] = {}
    for r in records:
        verbs.setdefault(r.verb, {}).setdefault(r.object, []).append(r)

    verb_nodes: list[HierarchyNode] = []
    for verb, objects in verbs.items():
        object_nodes: list[HierarchyNode] = []
        for obj, group in objects.items():
            persons = tuple(
                HierarchyNode(
                    label=r.subject,
                    level=Level.PERSON,
                    count=1,
                    tags={
                        "verdict": r.verdict.value,
                        "gender": r.gender.value,
                        "source": r.source_id,
                    },
                )
                for r in group
            )
            object_nodes.append(
                HierarchyNode(
                    label=obj, level=Level.OBJECT, count=len(persons), children=_ordered(persons)
                )
            )
        verb_nodes.append(
            HierarchyNode(
                label=verb,
                level=Level.VERB,
                count=sum(n.count for n in object_nodes),
                children=_ordered(object_nodes),
            )
        )
    return HierarchyNode(
        label="",
        level=Level.ROOT,
        count=sum(n.count for n in verb_nodes),
        children=_ordered(verb_nodes),
    )


def _ordered(nodes: Sequence[HierarchyNode]) -> tuple[HierarchyNode, ...]:
    return tuple(sorted(nodes, key=lambda n: (-n.count, n.label)))


def resort_hierarchy(node: HierarchyNode, alpha: bool) -> HierarchyNode:
    """Re-rank siblings: alphabetically, or back to count-descending."""
    children = tuple(resort_hierarchy(c, alpha) for c in node.children)
    if alpha:
        children = tuple(sorted(children, key=lambda n: (n.label, -n.count)))
    else:
        children = tuple(sorted(children, key=lambda n: (-n.count, n.label)))
    return HierarchyNode(
        label=node.label, level=node.level, count=node.count, children=children, tags=node.tags
    )


# ---------------------------------------------------------------------------
# Dialogue matrix
# ---------------------------------------------------------------------------


@dataclass(frozen=True, slots=True)
class HighlightSpan:
    start: int
    end: int
    color: str


@dataclass(frozen=True, slots=True)
class MatrixCell:
    word_count: int
    text: str
    spans: tuple[HighlightSpan, ...] = ()


@dataclass(frozen=True)
class MatrixModel:
    speakers: tuple[str, ...]
    cells: Mapping[tuple[str, str], MatrixCell]


def build_matrix(
    utterances: Sequence[Utterance],
    phrase_results: Sequence[PhraseSetResult] = (),
) -> MatrixModel:
    """Accumulate per-(speaker, addressee) dialogue cells.

    Cell text joins utterance texts with single spaces in utterance order;
    phrase occurrence spans are shifted into cell-text coordinates. Speakers
    are ordered by first appearance (as a speaker, then addressee-only names).
    """
    speakers: list[str] = []
    for u in utterances:
        if u.speaker not in speakers:
            speakers.append(u.speaker)
    for u in utterances:
        if u.addressee not in speakers:
            speakers.append(u.addressee)

    spans_by_utterance: dict[int, list[tuple[int, int, str]]] = {}
    for result in phrase_results:
        if result.color is None:
            continue
        for occ in result.occurrences:
            spans_by_utterance.setdefault(occ.utterance_index, []).append(
                (occ.char_span[0], occ.char_span[1], result.color)
            )

    texts: dict[tuple[str, str], list[str]] = {}
    counts: dict[tuple[str, str], int] = {}
    spans: dict[tuple[str, str], list[HighlightSpan]] = {}
    for u in utterances:
        cell = (u.speaker, u.addressee)
        parts = texts.setdefault(cell, [])
        offset = sum(len(p) + 1 for p in parts)
        parts.append(u.text)
        counts[cell] = counts.get(cell, 0) + _word_count(u.text)
        for s, e, color in spans_by_utterance.get(u.index, ()):
            spans.setdefault(cell, []).append(
                HighlightSpan(start=offset + s, end=offset + e, color=color)
            )

    cells = {
        cell: MatrixCell(
            word_count=counts[cell],
            text=" ".join(parts),
            spans=tuple(sorted(spans.get(cell, []), key=lambda h: (h.start, h.end, h.color))),
        )
        for cell, parts in texts.items()
    }
    return MatrixModel(speakers=tuple(speakers), cells=cells)


def _word_count(text: str) -> int:
    return sum(1 for t in tokenize(text) if t.kind is TokenKind.WORD)


# ---------------------------------------------------------------------------
# Scene model
# ---------------------------------------------------------------------------


def q3(x: float) -> float:
    """Quantize to 3 decimals; the scene file writes exactly this precision."""
    r = round(x, 3)
    return r if r else 0.0


@dataclass(frozen=True, slots=True)
class Style:
    weight: str = "normal"
    caps: bool = False
    size: float = 0.0
    fill: str = "#000000"
    background: str | None = None


@dataclass(frozen=True, slots=True)
class Element:
    id: str
    kind: str  # rect | text | bubble | path
    x: float = 0.0
    y: float = 0.0
    w: float = 0.0
    h: float = 0.0
    rot: float | None = None
    points: tuple[tuple[float, float], ...] | None = None
    text: str | None = None
    style: Style = Style()
    tags: Mapping[str, str] = field(default_factory=dict)


@dataclass(frozen=True)
class DocumentModel:
    canvas: tuple[float, float]
    elements: tuple[Element, ...]


class DocumentBuilder:
    """Collects elements in paint order, enforcing unique ids and quantizing
    all geometry on entry."""

    def __init__(self, width: float, height: float):
        self._canvas = (q3(width), q3(height))
        self._elements: list[Element] = []
        self._ids: set[str] = set()

    def set_height(self, height: float) -> None:
        self._canvas = (self._canvas[0], q3(height))

    @property
    def canvas(self) -> tuple[float, float]:
        return self._canvas

    def add(
        self,
        id: str,
        kind: str,
        x: float = 0.0,
        y: float = 0.0,
        w: float = 0.0,
        h: float = 0.0,
        rot: float | None = None,
        points: Sequence[tuple[float, float]] | None = None,
        text: str | None = None,
        style: Style = Style(),
        tags: Mapping[str, str] | None = None,
    ) -> None:
        if style.size:
            style = Style(
                weight=style.weight,
                caps=style.caps,
                size=q3(style.size),
                fill=style.fill,
                background=style.background,
            )
        self.extend(
            [
                Element(
                    id=id,
                    kind=kind,
                    x=q3(x),
                    y=q3(y),
                    w=q3(w),
                    h=q3(h),
                    rot=None if rot is None else q3(rot),
                    points=None
                    if points is None
                    else tuple((q3(px), q3(py)) for px, py in points),
                    text=text,
                    style=style,
                    tags=dict(tags) if tags else {},
                )
            ]
        )

    def extend(self, elements: Sequence[Element]) -> None:
        for e in elements:
            if e.id in self._ids:
                raise ValueError(f"duplicate element id {e.id!r}")
            self._ids.add(e.id)
            if self._escapes_canvas(e) and "overflow" not in e.tags:
                tags = dict(e.tags)
                tags["overflow"] = "1"
                e = Element(
                    id=e.id, kind=e.kind, x=e.x, y=e.y, w=e.w, h=e.h, rot=e.rot,
                    points=e.points, text=e.text, style=e.style, tags=tags,
                )
            self._elements.append(e)

    def extend_validated(self, elements: Sequence[Element]) -> None:
        """Append elements that already went through a builder for this same
        canvas (ids and overflow both settled). Skips all per-element checks,
        so callers must keep these ids out of later add() namespaces."""
        self._elements.extend(elements)

    def _escapes_canvas(self, e: Element) -> bool:
        cw, ch = self._canvas
        eps = 1e-6
        if e.points:
            xs = [p[0] for p in e.points]
            ys = [p[1] for p in e.points]
            return (
                min(xs) < -eps or min(ys) < -eps or max(xs) > cw + eps or max(ys) > ch + eps
            )
        return e.x < -eps or e.y < -eps or e.x + e.w > cw + eps or e.y + e.h > ch + eps

    def build(self) -> DocumentModel:
        return DocumentModel(canvas=self._canvas, elements=tuple(self._elements))
