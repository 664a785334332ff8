from __future__ import annotations

import json

from littext import cli, render

from .conftest import DATA, SAMPLES

SAMPLE = str(DATA / "inquests_sample.tsv")


def run(*argv) -> int:
    return cli.run(list(argv))


def test_unknown_flag_exits_1(capsys):
    code = run("inquests", "--input", SAMPLE, "--svg", "x.svg", "--frobnicate")
    assert code == 1
    assert "usage" in capsys.readouterr().err


def test_unknown_subcommand_exits_1():
    assert run("doodle") == 1


def test_missing_input_exits_1(tmp_path):
    assert run("inquests", "--input", str(tmp_path / "nope.tsv"),
               "--svg", str(tmp_path / "o.svg")) == 1


def test_output_flag_required(tmp_path):
    assert run("inquests", "--input", SAMPLE) == 1


def test_bad_filter_exits_1(tmp_path):
    assert run("inquests", "--input", SAMPLE, "--svg", str(tmp_path / "o.svg"),
               "--filter", "nonsense") == 1
    assert run("inquests", "--input", SAMPLE, "--svg", str(tmp_path / "o.svg"),
               "--filter", "color=red") == 1


def test_filter_soundness_against_grep(tmp_path, capsys):
    scene = tmp_path / "h.json"
    code = run("inquests", "--input", SAMPLE, "--layout", "listing",
               "--filter", "verdict=Homicide", "--scene", str(scene))
    assert code == 0
    doc = json.loads(scene.read_text())
    persons = [e for e in doc["elements"] if e.get("tags", {}).get("level") == "person"]
    grep = sum(
        1 for line in open(SAMPLE, encoding="utf-8") if "\tHomicide\t" in line
    )
    assert len(persons) == grep
    assert all(e["tags"]["verdict"] == "Homicide" for e in persons)


def test_sort_alpha_orders_verbs(tmp_path):
    scene = tmp_path / "a.json"
    assert run("inquests", "--input", SAMPLE, "--layout", "listing",
               "--sort", "alpha", "--scene", str(scene)) == 0
    doc = json.loads(scene.read_text())
    verbs = [e["tags"]["verb"] for e in doc["elements"]
             if e.get("tags", {}).get("level") == "verb"]
    assert verbs == sorted(verbs)


def test_layout_overflow_exits_2(tmp_path):
    cfg = tmp_path / "cfg.json"
    cfg.write_text('{"canvas_w": 120, "canvas_h": 60, "columns": 1}')
    code = run("inquests", "--input", SAMPLE, "--layout", "listing",
               "--config", str(cfg), "--svg", str(tmp_path / "o.svg"))
    assert code == 2


def test_dialogue_from_novel_and_tsv(tmp_path):
    out1 = tmp_path / "novel.json"
    out2 = tmp_path / "tsv.json"
    assert run("dialogue", "--input", str(SAMPLES / "alice_excerpt.txt"),
               "--variant", "bubbles", "--scene", str(out1)) == 0
    assert run("dialogue", "--input", str(SAMPLES / "alice_utterances.tsv"),
               "--variant", "text", "--scene", str(out2)) == 0
    doc = json.loads(out2.read_text())
    assert any(e.get("style", {}).get("background") for e in doc["elements"])


def test_dialogue_speaker_filter(tmp_path):
    out = tmp_path / "q.json"
    assert run("dialogue", "--input", str(SAMPLES / "alice_utterances.tsv"),
               "--variant", "bubbles", "--filter", "speaker=Queen",
               "--scene", str(out)) == 0
    doc = json.loads(out.read_text())
    froms = {e["tags"]["from"] for e in doc["elements"] if e["kind"] == "bubble"}
    assert froms == {"Queen"}


def test_bars_requires_valid_keywords_path(tmp_path):
    assert run("bars", "--input", str(SAMPLES / "songs.csv"),
               "--keywords", str(tmp_path / "nope.txt"),
               "--svg", str(tmp_path / "b.svg")) == 1


def test_path_subcommand_validates_points(tmp_path):
    assert run("path", "--text", "hi", "--points", "1,2",
               "--svg", str(tmp_path / "p.svg")) == 1
    assert run("path", "--text", "hi", "--points", "garbage",
               "--svg", str(tmp_path / "p.svg")) == 1
    assert run("path", "--text", "hi", "--points", "0,0 50,0",
               "--svg", str(tmp_path / "p.svg")) == 0


def test_lexicon_env_override(tmp_path, monkeypatch):
    bad = tmp_path / "missing.txt"
    monkeypatch.setenv("LITTEXT_LEXICON", str(bad))
    assert run("inquests", "--input", SAMPLE, "--svg", str(tmp_path / "o.svg")) == 1

    custom = tmp_path / "lex.txt"
    custom.write_text("[function]\nwith\na\nby\nand\nthe\nin\nof\n[pronoun]\nherself\nhis\n[verb]\nstruck\n")
    monkeypatch.setenv("LITTEXT_LEXICON", str(custom))
    scene = tmp_path / "o.json"
    assert run("inquests", "--input", SAMPLE, "--scene", str(scene)) == 0
    doc = json.loads(scene.read_text())
    verbs = {e["tags"]["verb"] for e in doc["elements"]
             if e.get("tags", {}).get("level") == "verb"}
    assert "struck" in verbs


def test_explicit_lexicon_flag_beats_env(tmp_path, monkeypatch):
    monkeypatch.setenv("LITTEXT_LEXICON", str(tmp_path / "missing.txt"))
    scene = tmp_path / "o.json"
    assert run("inquests", "--input", SAMPLE, "--scene", str(scene),
               "--lexicon", str(DATA / "lexicon.txt")) == 0


def test_help_exits_zero():
    assert run("--help") == 0


def test_scene_output_parses_back(tmp_path):
    scene = tmp_path / "s.json"
    assert run("skim", "--input", str(SAMPLES / "prose.txt"), "--scene", str(scene)) == 0
    model = render.from_scene(scene.read_bytes())
    assert model.elements
