"""Corpus ingestion: inquest TSV, novel dialogue, song CSV, paragraph splitting.

All parsers are pure functions of their input bytes or text and keep input
order, so repeated runs over the same file yield identical records.
"""

from __future__ import annotations

import bisect
import csv
import io
import re
from dataclasses import dataclass
from enum import Enum

from .errors import InputError


class Verdict(Enum):
    HOMICIDE = "Homicide"
    SUICIDE = "Suicide"
    ACCIDENT = "Accident"
    NATURAL = "Natural"
    UNDETERMINED = "Undetermined"


class Gender(Enum):
    FEMALE = "Female"
    MALE = "Male"
    UNKNOWN = "Unknown"


_VERDICTS = {v.value: v for v in Verdict}
_GENDERS = {g.value: g for g in Gender}

UNKNOWN_SPEAKER = "Unknown"


@dataclass(frozen=True)
class InquestRecord:
    id: str
    text: str
    verdict: Verdict
    gender: Gender


@dataclass(frozen=True)
class Utterance:
    """One attributed speech turn.

    char_span addresses the quoted content (quote marks excluded) in the
    source document, so source[start:end] == text.
    """

    index: int
    speaker: str
    addressee: str
    text: str
    char_span: tuple[int, int]


@dataclass(frozen=True)
class SongRecord:
    rank: int
    artist: str
    title: str
    sales: int
    lyric_opening: str


@dataclass(frozen=True)
class Paragraph:
    index: int
    text: str
    char_span: tuple[int, int]


@dataclass(frozen=True)
class InquestParse:
    records: tuple[InquestRecord, ...]
    skipped: int


@dataclass(frozen=True)
class UtteranceExtraction:
    utterances: tuple[Utterance, ...]
    unbalanced: bool


# ---------------------------------------------------------------------------
# Inquest TSV
# ---------------------------------------------------------------------------

_INQUEST_HEADER = ["id", "text", "verdict", "gender"]


def parse_inquests(data: bytes) -> InquestParse:
    """Parse the inquest TSV: columns id, text, verdict, gender.

    Rows with a missing field, an empty text, or an unrecognized verdict or
    gender are skipped and counted. A wrong header is a hard error.
    """
    try:
        text = data.decode("utf-8")
    except UnicodeDecodeError as exc:
        raise InputError(f"inquest TSV is not valid UTF-8: {exc}") from exc
    lines = text.replace("\r\n", "\n").split("\n")
    if not lines or lines[0].split("\t") != _INQUEST_HEADER:
        raise InputError(
            "inquest TSV must start with header 'id\\ttext\\tverdict\\tgender'"
        )
    records: list[InquestRecord] = []
    skipped = 0
    for line in lines[1:]:
        if line == "":
            continue
        fields = line.split("\t")
        if len(fields) != 4:
            skipped += 1
            continue
        rid, body, verdict_s, gender_s = fields
        if not body.strip() or verdict_s not in _VERDICTS or gender_s not in _GENDERS:
            skipped += 1
            continue
        records.append(
            InquestRecord(
                id=rid, text=body, verdict=_VERDICTS[verdict_s], gender=_GENDERS[gender_s]
            )
        )
    return InquestParse(records=tuple(records), skipped=skipped)


# ---------------------------------------------------------------------------
# Novel dialogue
# ---------------------------------------------------------------------------

SPEECH_VERBS = ("said", "cried", "replied", "asked", "shouted")

# verbs accepted on the name side of `<Name> <verb>` attribution
_NARRATION_VERBS = frozenset(
    SPEECH_VERBS
    + (
        "added",
        "answered",
        "began",
        "begged",
        "called",
        "continued",
        "exclaimed",
        "growled",
        "interrupted",
        "laughed",
        "muttered",
        "observed",
        "remarked",
        "repeated",
        "screamed",
        "shrieked",
        "sighed",
        "smiled",
        "snapped",
        "thought",
        "ventured",
        "went",
        "whispered",
        "yelled",
    )
)

# capitalized sentence openers that must not be mistaken for names
_CAP_STOPWORDS = frozenset(
    """A An The Then But And So Or Nor When While After Before There This That
    These Those It He She They We You I What Which Who Whom Why How Oh Well Now
    Yes No If As At By For In Of On To Not Never Alas Come Dear Off Out Up Down
    Here Once Just Still Perhaps However Indeed Meanwhile Suddenly Soon First
    Next Last Everybody Nobody Somebody Everyone""".split()
)

_CAP_RUN = r"[A-Z][\w'’-]*(?:[ ][A-Z][\w'’-]*)*"
_VERB_AFTER_NAME = r"[a-z][\w'’-]*"

# narration after the quote: `cried the March Hare` / `the Queen shouted`
_VERB_THEN_NAME = re.compile(
    r"\b(%s)[ ]+(?:the[ ]+)?(%s)" % ("|".join(SPEECH_VERBS), _CAP_RUN)
)
_NAME_THEN_VERB = re.compile(r"(?:\bthe[ ]+)?(%s)[ ]+(%s)\b" % (_CAP_RUN, _VERB_AFTER_NAME))
# name-verb right at the closing quote: `" the Queen shouted` / `" Alice went on`
_ANCHORED_NAME_THEN_VERB = re.compile(
    r"^[ ,;:—–-]*(?:the[ ]+)?(%s)[ ]+(%s)\b" % (_CAP_RUN, _VERB_AFTER_NAME)
)


def _is_narration_verb(word: str) -> bool:
    if word in _NARRATION_VERBS:
        return True
    for suffix in ("ed", "ing"):
        if word.endswith(suffix) and len(word) >= len(suffix) + 2:
            return True
    return False


def _clean_name(raw: str) -> str | None:
    words = raw.split()
    while words and words[0] in _CAP_STOPWORDS:
        words = words[1:]
    while words and words[-1] in _CAP_STOPWORDS:
        words = words[:-1]
    if not words:
        return None
    return " ".join(words)


def _match_speaker(window: str, after_quote: bool) -> str | None:
    """Find a speaker in the narration window on one side of a quote.

    Tries `<speech-verb> (the) <Name>` anywhere, and `<Name> <verb>`. In the
    window following a quote the name-verb form must sit right at the quote
    (distant matches are narration about someone, not attribution); in the
    window before a quote the match nearest the quote wins.
    """
    candidates: list[tuple[int, str]] = []
    for m in _VERB_THEN_NAME.finditer(window):
        name = _clean_name(m.group(2))
        if name:
            candidates.append((m.start(), name))
    if after_quote:
        m = _ANCHORED_NAME_THEN_VERB.match(window)
        if m and _is_narration_verb(m.group(2)):
            name = _clean_name(m.group(1))
            if name:
                candidates.append((m.start(), name))
    else:
        for m in _NAME_THEN_VERB.finditer(window):
            if not _is_narration_verb(m.group(2)):
                continue
            name = _clean_name(m.group(1))
            if name:
                candidates.append((m.start(), name))
    if not candidates:
        return None
    candidates.sort(key=lambda c: c[0])
    return candidates[-1][1] if not after_quote else candidates[0][1]


_SENT_END = re.compile(r"[.!?\n]")


def _quote_spans(text: str) -> tuple[list[tuple[int, int]], bool]:
    """Spans of quoted content (quote marks excluded), plus unbalance flag."""
    spans: list[tuple[int, int]] = []
    open_at: int | None = None
    for i, ch in enumerate(text):
        if ch not in "\"“”":
            continue
        if open_at is None:
            open_at = i
        else:
            spans.append((open_at + 1, i))
            open_at = None
    return spans, open_at is not None


def extract_utterances(text: str) -> UtteranceExtraction:
    """Extract quoted speech with speaker and addressee attribution.

    Attribution is three-tier: explicit narration tag in the same sentence
    as the closing quote, then turn alternation within the paragraph block,
    then Unknown. Addressee is the next speaker in the block, falling back
    to the previous one, then Unknown.
    """
    spans, unbalanced = _quote_spans(text)
    paragraphs = split_paragraphs(text)
    para_starts = [p.char_span[0] for p in paragraphs]

    def paragraph_of(pos: int) -> int:
        return max(0, bisect.bisect_right(para_starts, pos) - 1)

    # paragraph blocks: maximal runs of consecutive quote-bearing paragraphs
    quote_paras = sorted({paragraph_of(s) for s, _ in spans})
    block_of_para: dict[int, int] = {}
    block = -1
    prev_para: int | None = None
    for p in quote_paras:
        if prev_para is None or p != prev_para + 1:
            block += 1
        block_of_para[p] = block
        prev_para = p

    speakers: list[str | None] = []
    blocks: list[int] = []
    paras: list[int] = []
    for start, end in spans:
        paras.append(paragraph_of(start))
        blocks.append(block_of_para[paragraph_of(start)])
        # narration windows bounded by the enclosing sentence
        after_end = end + 1
        m = _SENT_END.search(text, after_end)
        next_open = text.find('"', after_end)
        if next_open < 0:
            next_open = len(text)
        for curly in ("“", "”"):
            k = text.find(curly, after_end)
            if 0 <= k < next_open:
                next_open = k
        after = text[after_end : min(m.end() if m else len(text), next_open)]

        before_stop = start - 1
        sent_starts = [text.rfind(c, 0, before_stop) for c in ".!?\n\"“”"]
        before = text[max(sent_starts) + 1 : before_stop]

        speaker = _match_speaker(after, after_quote=True)
        if speaker is None:
            speaker = _match_speaker(before, after_quote=False)
        speakers.append(speaker)

    # tier 2: a bare quote in the same paragraph continues the previous
    # speaker; a bare quote in a new paragraph alternates with the previous
    # two distinct speakers of the block
    for i, speaker in enumerate(speakers):
        if speaker is not None:
            continue
        if i > 0 and paras[i - 1] == paras[i] and speakers[i - 1] not in (None, UNKNOWN_SPEAKER):
            speakers[i] = speakers[i - 1]
            continue
        prev = None
        other = None
        for j in range(i - 1, -1, -1):
            if blocks[j] != blocks[i]:
                break
            s = speakers[j]
            if s is None or s == UNKNOWN_SPEAKER:
                continue
            if prev is None:
                prev = s
            elif s != prev:
                other = s
                break
        speakers[i] = other if (prev is not None and other is not None) else UNKNOWN_SPEAKER

    utterances: list[Utterance] = []
    for i, (start, end) in enumerate(spans):
        if i + 1 < len(spans) and blocks[i + 1] == blocks[i]:
            addressee = speakers[i + 1]
        elif i > 0 and blocks[i - 1] == blocks[i]:
            addressee = speakers[i - 1]
        else:
            addressee = UNKNOWN_SPEAKER
        utterances.append(
            Utterance(
                index=i,
                speaker=speakers[i] or UNKNOWN_SPEAKER,
                addressee=addressee or UNKNOWN_SPEAKER,
                text=text[start:end],
                char_span=(start, end),
            )
        )
    return UtteranceExtraction(utterances=tuple(utterances), unbalanced=unbalanced)


_UTTERANCE_HEADER = ["index", "speaker", "addressee", "text"]


def parse_utterances_tsv(data: bytes) -> tuple[Utterance, ...]:
    """Parse the pre-attributed utterance TSV (bypass format).

    Char spans are synthesized over a virtual document that joins the
    utterance texts with single newlines, preserving the span invariants.
    """
    try:
        text = data.decode("utf-8")
    except UnicodeDecodeError as exc:
        raise InputError(f"utterance TSV is not valid UTF-8: {exc}") from exc
    lines = text.replace("\r\n", "\n").split("\n")
    if not lines or lines[0].split("\t") != _UTTERANCE_HEADER:
        raise InputError(
            "utterance TSV must start with header 'index\\tspeaker\\taddressee\\ttext'"
        )
    utterances: list[Utterance] = []
    offset = 0
    for n, line in enumerate(lines[1:], start=2):
        if line == "":
            continue
        fields = line.split("\t")
        if len(fields) != 4:
            raise InputError(f"utterance TSV line {n}: expected 4 fields")
        idx_s, speaker, addressee, body = fields
        try:
            idx = int(idx_s)
        except ValueError as exc:
            raise InputError(f"utterance TSV line {n}: bad index {idx_s!r}") from exc
        if utterances and idx <= utterances[-1].index:
            raise InputError(f"utterance TSV line {n}: index must increase")
        utterances.append(
            Utterance(
                index=idx,
                speaker=speaker or UNKNOWN_SPEAKER,
                addressee=addressee or UNKNOWN_SPEAKER,
                text=body,
                char_span=(offset, offset + len(body)),
            )
        )
        offset += len(body) + 1
    return tuple(utterances)


# ---------------------------------------------------------------------------
# Song CSV
# ---------------------------------------------------------------------------

_SONG_HEADER = ["rank", "artist", "title", "sales", "lyric_opening"]


def parse_songs(data: bytes) -> tuple[SongRecord, ...]:
    """Parse the song chart CSV and return records sorted by sales descending.

    Duplicate ranks and negative sales are hard errors.
    """
    try:
        text = data.decode("utf-8")
    except UnicodeDecodeError as exc:
        raise InputError(f"song CSV is not valid UTF-8: {exc}") from exc
    reader = csv.reader(io.StringIO(text))
    try:
        header = next(reader)
    except StopIteration:
        raise InputError("song CSV is empty") from None
    if header != _SONG_HEADER:
        raise InputError(
            "song CSV must start with header 'rank,artist,title,sales,lyric_opening'"
        )
    songs: list[SongRecord] = []
    seen_ranks: set[int] = set()
    for n, row in enumerate(reader, start=2):
        if not row:
            continue
        if len(row) != 5:
            raise InputError(f"song CSV line {n}: expected 5 fields")
        try:
            rank = int(row[0])
            sales = int(row[3])
        except ValueError as exc:
            raise InputError(f"song CSV line {n}: rank and sales must be integers") from exc
        if rank <= 0:
            raise InputError(f"song CSV line {n}: rank must be positive")
        if rank in seen_ranks:
            raise InputError(f"song CSV line {n}: duplicate rank {rank}")
        if sales < 0:
            raise InputError(f"song CSV line {n}: negative sales")
        seen_ranks.add(rank)
        songs.append(
            SongRecord(rank=rank, artist=row[1], title=row[2], sales=sales, lyric_opening=row[4])
        )
    songs.sort(key=lambda s: (-s.sales, s.rank))
    return tuple(songs)


# ---------------------------------------------------------------------------
# Paragraphs
# ---------------------------------------------------------------------------


def split_paragraphs(text: str) -> list[Paragraph]:
    """Split body text on blank lines into trimmed, indexed paragraphs.

    A blank line is one containing only whitespace. Single newlines stay
    inside their paragraph; leading and trailing whitespace is trimmed off
    each paragraph span.
    """
    paragraphs: list[Paragraph] = []

    def close_block(start: int, end: int) -> None:
        chunk = text[start:end]
        stripped = chunk.strip()
        if not stripped:
            return
        s = start + (len(chunk) - len(chunk.lstrip()))
        paragraphs.append(
            Paragraph(index=len(paragraphs), text=stripped, char_span=(s, s + len(stripped)))
        )

    block_start: int | None = None
    block_end = 0
    offset = 0
    for line in text.splitlines(keepends=True):
        if line.strip():
            if block_start is None:
                block_start = offset
            block_end = offset + len(line)
        elif block_start is not None:
            close_block(block_start, block_end)
            block_start = None
        offset += len(line)
    if block_start is not None:
        close_block(block_start, block_end)
    return paragraphs
