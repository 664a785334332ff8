"""Serialize a DocumentModel to standalone SVG and to the scene-model JSON.

Both writers are canonical: fixed key order, numbers printed with exactly
three decimals, no timestamps. Equal models therefore produce byte-equal
files, which the golden tests and the viewer rely on.
"""

from __future__ import annotations

import json
from typing import Mapping

from .errors import InputError, SceneVersionError
from .layout import ASCENT_EM
from .vizmodel import DocumentModel, Element, Style

SCENE_VERSION = 1

_FONT_STACK = "Helvetica, Arial, sans-serif"


def _num(x: float) -> str:
    s = f"{x:.3f}"
    return "0.000" if s == "-0.000" else s


def _esc(text: str) -> str:
    return (
        text.replace("&", "&amp;").replace("<", "&lt;").replace(">", "&gt;").replace('"', "&quot;")
    )


def _tag_attrs(tags: Mapping[str, str]) -> str:
    parts = []
    for k in sorted(tags):
        parts.append(f' data-{_esc(k)}="{_esc(tags[k])}"')
    return "".join(parts)


def to_svg(model: DocumentModel) -> str:
    """Emit the model as SVG 1.1 text, one line per element, in paint order."""
    w, h = model.canvas
    out = [
        '<?xml version="1.0" encoding="UTF-8"?>\n'
        f'<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{_num(w)}" '
        f'height="{_num(h)}" viewBox="0 0 {_num(w)} {_num(h)}">\n<g>\n'
    ]
    for e in model.elements:
        out.append(_svg_element(e))
    out.append("</g>\n</svg>\n")
    return "".join(out)


def _svg_element(e: Element) -> str:
    common = f' id="{_esc(e.id)}"{_tag_attrs(e.tags)}'
    if e.kind == "rect":
        return (
            f'<rect{common} x="{_num(e.x)}" y="{_num(e.y)}" width="{_num(e.w)}" '
            f'height="{_num(e.h)}" fill="{_esc(e.style.fill)}"/>\n'
        )
    if e.kind == "bubble":
        r = e.w / 2
        return (
            f'<circle{common} cx="{_num(e.x + r)}" cy="{_num(e.y + e.h / 2)}" '
            f'r="{_num(r)}" fill="{_esc(e.style.fill)}"/>\n'
        )
    if e.kind == "path":
        pts = " ".join(f"{_num(px)},{_num(py)}" for px, py in (e.points or ()))
        return (
            f'<polyline{common} points="{pts}" fill="none" '
            f'stroke="{_esc(e.style.fill)}" stroke-width="1.000"/>\n'
        )
    if e.kind == "text":
        baseline = e.y + ASCENT_EM * e.style.size
        pieces = []
        if e.style.background is not None:
            pieces.append(
                f'<rect x="{_num(e.x)}" y="{_num(e.y)}" width="{_num(e.w)}" '
                f'height="{_num(e.h)}" fill="{_esc(e.style.background)}"/>'
            )
        attrs = [
            f'x="{_num(e.x)}"',
            f'y="{_num(baseline)}"',
            f'font-family="{_FONT_STACK}"',
            f'font-size="{_num(e.style.size)}"',
        ]
        if e.style.weight == "bold":
            attrs.append('font-weight="bold"')
        attrs.append(f'fill="{_esc(e.style.fill)}"')
        if e.rot is not None and e.rot != 0:
            attrs.append(
                f'transform="rotate({_num(e.rot)} {_num(e.x)} {_num(baseline)})"'
            )
        pieces.append(f'<text {" ".join(attrs)}>{_esc(e.text or "")}</text>')
        if len(pieces) == 1:
            return f"<g{common}>{pieces[0]}</g>\n"
        return f'<g{common}>{"".join(pieces)}</g>\n'
    raise InputError(f"unknown element kind {e.kind!r}")


# ---------------------------------------------------------------------------
# Scene model file
# ---------------------------------------------------------------------------


def to_scene(model: DocumentModel) -> bytes:
    """Canonical scene JSON: fixed key order, 3-decimal numbers, UTF-8."""
    parts = [
        '{"version":%d,"canvas":{"w":%s,"h":%s},"elements":['
        % (SCENE_VERSION, _num(model.canvas[0]), _num(model.canvas[1]))
    ]
    for i, e in enumerate(model.elements):
        if i:
            parts.append(",")
        parts.append(_scene_element(e))
    parts.append("]}")
    return "".join(parts).encode("utf-8")


def _scene_element(e: Element) -> str:
    fields = [
        f'"id":{json.dumps(e.id)}',
        f'"kind":{json.dumps(e.kind)}',
        f'"x":{_num(e.x)}',
        f'"y":{_num(e.y)}',
        f'"w":{_num(e.w)}',
        f'"h":{_num(e.h)}',
    ]
    if e.rot is not None:
        fields.append(f'"rot":{_num(e.rot)}')
    if e.points is not None:
        pts = ",".join(f"[{_num(px)},{_num(py)}]" for px, py in e.points)
        fields.append(f'"points":[{pts}]')
    if e.text is not None:
        fields.append(f'"text":{json.dumps(e.text)}')
    style_fields = []
    if e.style.weight != "normal":
        style_fields.append(f'"weight":{json.dumps(e.style.weight)}')
    if e.style.caps:
        style_fields.append('"caps":true')
    if e.style.size:
        style_fields.append(f'"size":{_num(e.style.size)}')
    if e.style.fill != "#000000":
        style_fields.append(f'"fill":{json.dumps(e.style.fill)}')
    if e.style.background is not None:
        style_fields.append(f'"background":{json.dumps(e.style.background)}')
    if style_fields:
        fields.append('"style":{%s}' % ",".join(style_fields))
    if e.tags:
        tag_fields = ",".join(
            f"{json.dumps(k)}:{json.dumps(e.tags[k])}" for k in sorted(e.tags)
        )
        fields.append('"tags":{%s}' % tag_fields)
    return "{%s}" % ",".join(fields)


def from_scene(data: bytes) -> DocumentModel:
    """Parse a scene file back into a DocumentModel (inverse of to_scene)."""
    try:
        raw = json.loads(data.decode("utf-8"))
    except (UnicodeDecodeError, json.JSONDecodeError) as exc:
        raise InputError(f"scene file is not valid JSON: {exc}") from exc
    if not isinstance(raw, dict):
        raise InputError("scene file must hold a JSON object")
    version = raw.get("version")
    if version != SCENE_VERSION:
        raise SceneVersionError(f"unsupported scene version {version!r}")
    canvas = raw.get("canvas")
    if not isinstance(canvas, dict) or "w" not in canvas or "h" not in canvas:
        raise InputError("scene canvas must carry w and h")
    elements = []
    for item in raw.get("elements", []):
        style_raw = item.get("style", {})
        style = Style(
            weight=style_raw.get("weight", "normal"),
            caps=style_raw.get("caps", False),
            size=float(style_raw.get("size", 0.0)),
            fill=style_raw.get("fill", "#000000"),
            background=style_raw.get("background"),
        )
        points = item.get("points")
        elements.append(
            Element(
                id=item["id"],
                kind=item["kind"],
                x=float(item.get("x", 0.0)),
                y=float(item.get("y", 0.0)),
                w=float(item.get("w", 0.0)),
                h=float(item.get("h", 0.0)),
                rot=None if "rot" not in item else float(item["rot"]),
                points=None
                if points is None
                else tuple((float(p[0]), float(p[1])) for p in points),
                text=item.get("text"),
                style=style,
                tags=dict(item.get("tags", {})),
            )
        )
    return DocumentModel(
        canvas=(float(canvas["w"]), float(canvas["h"])), elements=tuple(elements)
    )
