"""Command line entry point: corpora in, SVG and scene files out.

Exit codes: 0 success, 1 input error, 2 layout overflow.
"""

from __future__ import annotations

import argparse
import os
import sys
from pathlib import Path

from . import corpus, layout, render, repeats, textproc, vizmodel
from .errors import InputError, LayoutOverflowError


class _CliError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message: str) -> None:  # type: ignore[override]
        raise _CliError(message)


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="littext", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p: argparse.ArgumentParser, lexicon: bool = False) -> None:
        p.add_argument("--input", required=True, help="input corpus file")
        p.add_argument("--svg", help="output SVG path")
        p.add_argument("--scene", help="output scene JSON path")
        p.add_argument("--config", help="layout config JSON path")
        if lexicon:
            p.add_argument("--lexicon", help="lexicon file (overrides LITTEXT_LEXICON)")

    p = sub.add_parser("inquests", help="verdict hierarchy as treemap or listing")
    common(p, lexicon=True)
    p.add_argument("--layout", choices=["treemap", "listing"], default="listing")
    p.add_argument("--filter", action="append", default=[], metavar="TAG=VALUE",
                   help="keep only records matching all tag=value pairs")
    p.add_argument("--sort", choices=["count", "alpha"], default="count")

    p = sub.add_parser("dialogue", help="speaker adjacency matrix from a novel or utterance TSV")
    common(p, lexicon=True)
    p.add_argument("--variant", choices=["bubbles", "text"], default="bubbles")
    p.add_argument("--filter", action="append", default=[], metavar="TAG=VALUE")
    p.add_argument("--min-n", type=int, default=3, help="smallest phrase window")
    p.add_argument("--max-n", type=int, default=7, help="largest phrase window")
    p.add_argument("--min-support", type=int, default=2, help="repeats needed to keep a set")

    p = sub.add_parser("bars", help="song rows over sales bars and keyword highlights")
    common(p)
    p.add_argument("--keywords", help="keyword rules file (keyword=colorhex lines)")

    p = sub.add_parser("skim", help="body text over two-word paragraph summaries")
    common(p, lexicon=True)

    p = sub.add_parser("path", help="text along a data polyline")
    p.add_argument("--text", required=True, help="text to place on the path")
    p.add_argument("--points", required=True,
                   help="polyline as 'x,y x,y ...' (at least two points)")
    p.add_argument("--svg", help="output SVG path")
    p.add_argument("--scene", help="output scene JSON path")
    p.add_argument("--config", help="layout config JSON path")
    return parser


def run(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except _CliError as exc:
        print(f"error: {exc}", file=sys.stderr)
        parser.print_usage(sys.stderr)
        return 1
    except SystemExit as exc:  # --help
        return int(exc.code or 0)

    try:
        return _dispatch(args)
    except LayoutOverflowError as exc:
        print(f"layout overflow: {exc}", file=sys.stderr)
        return 2
    except InputError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


def main() -> None:
    sys.exit(run())


# ---------------------------------------------------------------------------


def _dispatch(args: argparse.Namespace) -> int:
    config = layout.load_config(args.config) if args.config else layout.LayoutConfig()
    if args.command == "path":
        points = _parse_points(args.points)
        elements = layout.layout_text_on_path(args.text, points, config)
        b = vizmodel.DocumentBuilder(config.canvas_w, config.canvas_h)
        b.extend(elements)
        return _write_outputs(b.build(), args)

    input_path = Path(args.input)
    if not input_path.is_file():
        raise InputError(f"input file not found: {input_path}")
    data = input_path.read_bytes()

    if args.command == "inquests":
        return _run_inquests(args, config, data)
    if args.command == "dialogue":
        return _run_dialogue(args, config, data)
    if args.command == "bars":
        return _run_bars(args, config, data)
    if args.command == "skim":
        return _run_skim(args, config, data)
    raise InputError(f"unknown command {args.command!r}")


def _load_lexicon(args: argparse.Namespace) -> textproc.Lexicon:
    path = getattr(args, "lexicon", None) or os.environ.get("LITTEXT_LEXICON")
    if path:
        if not Path(path).is_file():
            raise InputError(f"lexicon file not found: {path}")
        return textproc.load_lexicon(path)
    return textproc.default_lexicon()


def _parse_filters(pairs: list[str], allowed: set[str]) -> dict[str, str]:
    filters: dict[str, str] = {}
    for pair in pairs:
        if "=" not in pair:
            raise InputError(f"bad filter {pair!r}: expected tag=value")
        tag, _, value = pair.partition("=")
        if tag not in allowed:
            raise InputError(f"unsupported filter tag {tag!r}; allowed: {sorted(allowed)}")
        filters[tag] = value
    return filters


def _parse_points(raw: str) -> list[tuple[float, float]]:
    points = []
    for chunk in raw.split():
        if "," not in chunk:
            raise InputError(f"bad point {chunk!r}: expected x,y")
        xs, _, ys = chunk.partition(",")
        try:
            points.append((float(xs), float(ys)))
        except ValueError as exc:
            raise InputError(f"bad point {chunk!r}: {exc}") from exc
    if len(points) < 2:
        raise InputError("path needs at least two points")
    return points


def _write_outputs(model: vizmodel.DocumentModel, args: argparse.Namespace) -> int:
    if not args.svg and not args.scene:
        raise InputError("at least one of --svg or --scene is required")
    if args.svg:
        Path(args.svg).write_text(render.to_svg(model), encoding="utf-8", newline="\n")
    if args.scene:
        Path(args.scene).write_bytes(render.to_scene(model))
    return 0


def _run_inquests(args: argparse.Namespace, config: layout.LayoutConfig, data: bytes) -> int:
    lexicon = _load_lexicon(args)
    parse = corpus.parse_inquests(data)
    filters = _parse_filters(args.filter, {"verdict", "gender"})
    records = [
        r
        for r in parse.records
        if ("verdict" not in filters or r.verdict.value == filters["verdict"])
        and ("gender" not in filters or r.gender.value == filters["gender"])
    ]
    svo_records: list[textproc.SvoRecord] = []
    diagnostics = 0
    for record in records:
        result = textproc.extract_svo(record, lexicon)
        if result.diagnostic:
            diagnostics += 1
        svo_records.extend(result.records)
    hierarchy = vizmodel.build_hierarchy(svo_records)
    hierarchy = vizmodel.resort_hierarchy(hierarchy, alpha=(args.sort == "alpha"))
    print(
        f"inquests: {len(parse.records)} rows ({parse.skipped} malformed rows skipped), "
        f"{len(records)} after filters, {len(svo_records)} deceased persons, "
        f"{diagnostics} rows skipped by extraction",
        file=sys.stderr,
    )
    if args.layout == "treemap":
        model = layout.layout_treemap(hierarchy, config)
    else:
        model = layout.layout_listing(hierarchy, config)
    return _write_outputs(model, args)


def _run_dialogue(args: argparse.Namespace, config: layout.LayoutConfig, data: bytes) -> int:
    lexicon = _load_lexicon(args)
    if args.input.endswith(".tsv"):
        utterances = list(corpus.parse_utterances_tsv(data))
    else:
        extraction = corpus.extract_utterances(data.decode("utf-8"))
        if extraction.unbalanced:
            print("warning: unbalanced quotes; trailing text ignored", file=sys.stderr)
        utterances = list(extraction.utterances)
    filters = _parse_filters(args.filter, {"speaker"})
    if "speaker" in filters:
        utterances = [u for u in utterances if u.speaker == filters["speaker"]]
    print(f"dialogue: {len(utterances)} utterances", file=sys.stderr)
    if args.variant == "text":
        results = repeats.detect_repeats(
            utterances, lexicon, n_range=(args.min_n, args.max_n),
            min_support=args.min_support,
        )
        results = repeats.assign_phrase_colors(results, config.palette)
        print(f"dialogue: {len(results)} repeated word sets", file=sys.stderr)
        matrix = vizmodel.build_matrix(utterances, results)
        model = layout.layout_matrix_text(matrix, config)
    else:
        matrix = vizmodel.build_matrix(utterances)
        model = layout.layout_matrix_bubbles(matrix, config)
    return _write_outputs(model, args)


def _run_bars(args: argparse.Namespace, config: layout.LayoutConfig, data: bytes) -> int:
    songs = corpus.parse_songs(data)
    rules: list[repeats.KeywordRule] = []
    if args.keywords:
        rules_path = Path(args.keywords)
        if not rules_path.is_file():
            raise InputError(f"keyword rules file not found: {rules_path}")
        rules = repeats.parse_keyword_rules(rules_path.read_text(encoding="utf-8"))
    matches = [repeats.match_keywords(layout.bar_row_text(s), rules) for s in songs]
    print(
        f"bars: {len(songs)} songs, {sum(len(m) for m in matches)} keyword matches",
        file=sys.stderr,
    )
    model = layout.layout_bar_rows(songs, matches, config)
    return _write_outputs(model, args)


def _run_skim(args: argparse.Namespace, config: layout.LayoutConfig, data: bytes) -> int:
    lexicon = _load_lexicon(args)
    paragraphs = corpus.split_paragraphs(data.decode("utf-8"))
    summaries = [textproc.summarize_paragraph(p, lexicon) for p in paragraphs]
    summarized = sum(1 for s in summaries if s is not None)
    print(f"skim: {len(paragraphs)} paragraphs, {summarized} summarized", file=sys.stderr)
    model = layout.layout_skim(paragraphs, summaries, config)
    return _write_outputs(model, args)
