"""Repeated word-set mining per speaker, and fixed keyword matching.

A word set is order-insensitive: the key of a token window is the sorted
multiset of its lowercased words, with every pronoun replaced by a
placeholder so that his/her variants of a catchphrase collapse to one set.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, replace
from typing import Sequence

from .corpus import Utterance
from .errors import InputError
from .textproc import Lexicon, Tag, TaggedToken, TokenKind, tag_tokens, tokenize

PRON_PLACEHOLDER = "PRON"


@dataclass(frozen=True)
class PhraseKey:
    words: tuple[str, ...]

    def __post_init__(self) -> None:
        if self.words != tuple(sorted(self.words)):
            raise ValueError("phrase key words must be sorted")


@dataclass(frozen=True, slots=True)
class Occurrence:
    """One window hit: token indices into the utterance's token list and the
    matching character span of the utterance text."""

    utterance_index: int
    token_span: tuple[int, int]
    char_span: tuple[int, int]


@dataclass(frozen=True)
class PhraseSetResult:
    speaker: str
    key: PhraseKey
    occurrences: tuple[Occurrence, ...]
    support: int
    color: str | None = None


@dataclass(frozen=True)
class KeywordRule:
    keyword: str
    color: str


@dataclass(frozen=True)
class KeywordMatch:
    span: tuple[int, int]
    color: str


def phrase_key(window: Sequence[TaggedToken]) -> PhraseKey:
    """Order-insensitive key: lowercased words, pronouns replaced, sorted."""
    words = [
        PRON_PLACEHOLDER if tt.tag is Tag.PRON else tt.token.text.lower() for tt in window
    ]
    return PhraseKey(words=tuple(sorted(words)))


def _has_content(window: Sequence[TaggedToken]) -> bool:
    return any(tt.tag not in (Tag.FUNC, Tag.PRON) for tt in window)


def detect_repeats(
    utterances: Sequence[Utterance],
    lexicon: Lexicon,
    n_range: tuple[int, int] = (3, 7),
    min_support: int = 2,
) -> list[PhraseSetResult]:
    """Mine repeated word sets per speaker.

    Windows of each length in n_range slide over the punctuation-free token
    sequence of every sentence of a speaker's utterances. Occurrences of a
    key must not overlap (overlapping hits of one phrase are not repeats;
    the leftmost is kept). Keys with support below min_support, or made only
    of function words and pronouns, are dropped. A key is also dropped when
    every one of its occurrences lies inside an occurrence of a longer
    surviving key with at least equal support. Results are ordered by
    speaker, then first occurrence.
    """
    n_min, n_max = n_range
    if n_min < 1 or n_max < n_min:
        raise InputError(f"bad window range {n_range!r}")

    per_speaker: dict[str, dict[PhraseKey, list[Occurrence]]] = {}
    content_keys: set[PhraseKey] = set()
    for utt in utterances:
        tagged = tag_tokens(tokenize(utt.text), lexicon)
        by_sentence: dict[int, list[tuple[int, TaggedToken]]] = {}
        for pos, tt in enumerate(tagged):
            if tt.token.kind is TokenKind.PUNCT:
                continue
            by_sentence.setdefault(tt.token.sentence_index, []).append((pos, tt))
        table = per_speaker.setdefault(utt.speaker, {})
        for sent in by_sentence.values():
            for n in range(n_min, n_max + 1):
                for i in range(len(sent) - n + 1):
                    window = sent[i : i + n]
                    key = phrase_key([tt for _, tt in window])
                    if _has_content([tt for _, tt in window]):
                        content_keys.add(key)
                    first_pos, first_tt = window[0]
                    last_pos, last_tt = window[-1]
                    table.setdefault(key, []).append(
                        Occurrence(
                            utterance_index=utt.index,
                            token_span=(first_pos, last_pos + 1),
                            char_span=(
                                first_tt.token.char_span[0],
                                last_tt.token.char_span[1],
                            ),
                        )
                    )

    results: list[PhraseSetResult] = []
    for speaker in sorted(per_speaker):
        table = {
            key: disjoint_occurrences(occs) for key, occs in per_speaker[speaker].items()
        }
        survivors = {
            key: occs
            for key, occs in table.items()
            if len(occs) >= min_support and key in content_keys
        }
        kept = _apply_maximality(survivors)
        for key, occs in kept.items():
            results.append(
                PhraseSetResult(
                    speaker=speaker,
                    key=key,
                    occurrences=tuple(occs),
                    support=len(occs),
                )
            )
    results.sort(
        key=lambda r: (
            r.speaker,
            r.occurrences[0].utterance_index,
            r.occurrences[0].char_span[0],
            len(r.key.words),
            r.key.words,
        )
    )
    return results


def disjoint_occurrences(occs: list[Occurrence]) -> list[Occurrence]:
    """Greedy left-to-right selection of non-overlapping occurrences."""
    kept: list[Occurrence] = []
    for occ in occs:
        if kept:
            last = kept[-1]
            if (
                last.utterance_index == occ.utterance_index
                and occ.token_span[0] < last.token_span[1]
            ):
                continue
        kept.append(occ)
    return kept


def _apply_maximality(
    table: dict[PhraseKey, list[Occurrence]]
) -> dict[PhraseKey, list[Occurrence]]:
    """Drop keys whose every occurrence nests inside a longer surviving key."""
    by_length_desc = sorted(table, key=lambda k: -len(k.words))
    kept: dict[PhraseKey, list[Occurrence]] = {}
    for key in by_length_desc:
        occs = table[key]
        dominated = all(
            any(
                len(other.words) > len(key.words)
                and len(kept[other]) >= len(occs)
                and _contains(o2, o1)
                for other in kept
                for o2 in kept[other]
            )
            for o1 in occs
        )
        if not dominated:
            kept[key] = occs
    return kept


def _contains(outer: Occurrence, inner: Occurrence) -> bool:
    return (
        outer.utterance_index == inner.utterance_index
        and outer.token_span[0] <= inner.token_span[0]
        and outer.token_span[1] >= inner.token_span[1]
    )


def assign_phrase_colors(
    results: Sequence[PhraseSetResult], palette: Sequence[str]
) -> list[PhraseSetResult]:
    """Assign palette colors round-robin in result order."""
    if not palette:
        raise InputError("palette must not be empty")
    return [replace(r, color=palette[i % len(palette)]) for i, r in enumerate(results)]


# ---------------------------------------------------------------------------
# Keyword rules
# ---------------------------------------------------------------------------


def parse_keyword_rules(text: str) -> list[KeywordRule]:
    """Parse rule lines of the form keyword=colorhex."""
    rules: list[KeywordRule] = []
    seen: set[str] = set()
    for n, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line:
            continue
        if "=" not in line:
            raise InputError(f"keyword rules line {n}: expected keyword=color")
        keyword, _, color = line.partition("=")
        keyword = keyword.strip()
        color = color.strip()
        if not keyword or not color:
            raise InputError(f"keyword rules line {n}: empty keyword or color")
        folded = keyword.lower()
        if folded in seen:
            raise InputError(f"keyword rules line {n}: duplicate keyword {keyword!r}")
        seen.add(folded)
        rules.append(KeywordRule(keyword=keyword, color=color))
    return rules


def match_keywords(text: str, rules: Sequence[KeywordRule]) -> list[KeywordMatch]:
    """Case-insensitive whole-word matches, non-overlapping, earlier rule wins."""
    matches: list[KeywordMatch] = []
    taken: list[tuple[int, int]] = []
    for rule in rules:
        pattern = re.compile(r"\b" + re.escape(rule.keyword) + r"\b", re.IGNORECASE)
        for m in pattern.finditer(text):
            span = m.span()
            if any(span[0] < e and s < span[1] for s, e in taken):
                continue
            taken.append(span)
            matches.append(KeywordMatch(span=span, color=rule.color))
    matches.sort(key=lambda km: km.span)
    return matches
