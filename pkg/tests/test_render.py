from __future__ import annotations

import xml.etree.ElementTree as ET

import pytest

from littext import corpus, layout, render, repeats, textproc, vizmodel
from littext.errors import SceneVersionError
from littext.layout import LayoutConfig
from littext.vizmodel import DocumentBuilder, DocumentModel, Style

from .conftest import GOLDEN


def single_text_model() -> DocumentModel:
    b = DocumentBuilder(200, 100)
    b.add("t1", "text", x=10, y=20, w=85.5, h=14.4, text="Sarah Skyring",
          style=Style(weight="normal", size=12, fill="#C00000", background="#F8E0E0"),
          tags={"level": "person", "verdict": "Homicide", "gender": "Female"})
    return b.build()


def fixture_models(sample_tsv, lexicon, alice_utterances_tsv) -> list[DocumentModel]:
    parsed = corpus.parse_inquests(sample_tsv)
    records = []
    for rec in parsed.records[:60]:
        records.extend(textproc.extract_svo(rec, lexicon).records)
    hierarchy = vizmodel.build_hierarchy(records)
    config = LayoutConfig()

    utts = corpus.parse_utterances_tsv(alice_utterances_tsv)
    results = repeats.assign_phrase_colors(
        repeats.detect_repeats(utts, lexicon), config.palette
    )
    matrix = vizmodel.build_matrix(utts, results)

    songs = [
        corpus.SongRecord(rank=1, artist="A", title="T", sales=100, lyric_opening="la la"),
        corpus.SongRecord(rank=2, artist="B", title="U", sales=50, lyric_opening="do re"),
    ]
    paras = corpus.split_paragraphs("First paragraph here.\n\nSecond one follows it.")
    path_b = DocumentBuilder(300, 200)
    path_b.extend(
        layout.layout_text_on_path("along the line", [(0, 150), (120, 40), (280, 90)], config)
    )
    return [
        single_text_model(),
        layout.layout_listing(hierarchy, config),
        layout.layout_treemap(hierarchy, config),
        layout.layout_matrix_bubbles(matrix, config),
        layout.layout_matrix_text(matrix, config),
        layout.layout_bar_rows(songs, [[], []], config),
        layout.layout_skim(paras, [("Name", "said"), None], config),
        path_b.build(),
    ]


# ---------------------------------------------------------------------------
# SVG
# ---------------------------------------------------------------------------


def test_svg_empty_model_has_root_and_empty_group():
    model = DocumentBuilder(100, 50).build()
    svg = render.to_svg(model)
    root = ET.fromstring(svg)
    assert root.tag.endswith("svg")
    (group,) = list(root)
    assert group.tag.endswith("g")
    assert list(group) == []


def test_svg_is_deterministic(sample_tsv, lexicon, alice_utterances_tsv):
    for model in fixture_models(sample_tsv, lexicon, alice_utterances_tsv):
        assert render.to_svg(model) == render.to_svg(model)


def test_svg_single_text_matches_golden():
    got = render.to_svg(single_text_model())
    assert got == (GOLDEN / "single_text.svg").read_text(encoding="utf-8")


def test_svg_is_well_formed_for_all_fixtures(sample_tsv, lexicon, alice_utterances_tsv):
    for model in fixture_models(sample_tsv, lexicon, alice_utterances_tsv):
        ET.fromstring(render.to_svg(model))


def test_element_ids_unique_in_all_fixtures(sample_tsv, lexicon, alice_utterances_tsv):
    for model in fixture_models(sample_tsv, lexicon, alice_utterances_tsv):
        ids = [e.id for e in model.elements]
        assert len(ids) == len(set(ids))


def test_svg_escapes_markup_characters():
    b = DocumentBuilder(100, 50)
    b.add("t", "text", w=10, h=10, text='<&">', style=Style(size=8))
    svg = render.to_svg(b.build())
    ET.fromstring(svg)
    assert "&lt;&amp;" in svg


def test_svg_rotation_transform_present():
    b = DocumentBuilder(100, 100)
    b.add("g0", "text", x=10, y=10, w=5, h=10, rot=90.0, text="a", style=Style(size=10))
    svg = render.to_svg(b.build())
    assert 'transform="rotate(90.000 10.000 18.000)"' in svg


# ---------------------------------------------------------------------------
# scene files
# ---------------------------------------------------------------------------


def test_scene_roundtrip_on_all_fixtures(sample_tsv, lexicon, alice_utterances_tsv):
    for model in fixture_models(sample_tsv, lexicon, alice_utterances_tsv):
        data = render.to_scene(model)
        assert render.from_scene(data) == model


def test_scene_serialization_is_canonical(sample_tsv, lexicon, alice_utterances_tsv):
    for model in fixture_models(sample_tsv, lexicon, alice_utterances_tsv):
        assert render.to_scene(model) == render.to_scene(model)


def test_scene_rejects_unsupported_version():
    data = render.to_scene(single_text_model())
    tampered = data.replace(b'"version":1', b'"version":999')
    with pytest.raises(SceneVersionError):
        render.from_scene(tampered)


def test_scene_negative_zero_is_normalized():
    b = DocumentBuilder(10, 10)
    b.add("r", "rect", x=-0.0001, y=0, w=1, h=1)
    data = render.to_scene(b.build())
    assert b"-0.000" not in data


def test_scene_omits_absent_optionals():
    b = DocumentBuilder(10, 10)
    b.add("r", "rect", x=1, y=2, w=3, h=4)
    data = render.to_scene(b.build())
    assert b'"rot"' not in data
    assert b'"text"' not in data
    assert b'"points"' not in data
    assert b'"style"' not in data  # all-default style collapses away
    assert b"null" not in data


def test_scene_equal_models_byte_equal():
    a = single_text_model()
    b = single_text_model()
    assert a == b
    assert render.to_scene(a) == render.to_scene(b)
