"""Tokenization, sentence splitting, lexicon tagging, SVO extraction, summaries.

The tagger is deliberately small: two closed word lists (function words and
pronouns), a known-verb list with an -ed/-ing suffix fallback, and a
capitalization rule for proper nouns. That is enough structure to drive the
extraction and summarization passes over the bundled corpora.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from enum import Enum
from importlib import resources
from pathlib import Path

from .corpus import Gender, InquestRecord, Paragraph, Verdict
from .errors import InputError


class TokenKind(Enum):
    WORD = "Word"
    NUMBER = "Number"
    PUNCT = "Punct"


class Tag(Enum):
    PROPN = "PROPN"
    NOUN = "NOUN"
    VERB = "VERB"
    FUNC = "FUNC"
    PRON = "PRON"
    OTHER = "OTHER"


@dataclass(frozen=True, slots=True)
class Token:
    text: str
    kind: TokenKind
    char_span: tuple[int, int]
    sentence_index: int


@dataclass(frozen=True, slots=True)
class TaggedToken:
    token: Token
    tag: Tag


@dataclass(frozen=True)
class SvoRecord:
    subject: str
    verb: str
    object: str
    verdict: Verdict
    gender: Gender
    source_id: str


@dataclass(frozen=True)
class SvoResult:
    records: tuple[SvoRecord, ...]
    diagnostic: str | None = None


@dataclass(frozen=True)
class Lexicon:
    """Word lists backing the tagger.

    Suffix rules fire only when the stem keeps at least two characters, so
    'died' and 'going' match but 'bed' and 'king' do not.
    """

    function_words: frozenset[str]
    pronouns: frozenset[str]
    verb_suffixes: tuple[str, ...] = ("ed", "ing")
    known_verbs: frozenset[str] = frozenset()

    def __post_init__(self) -> None:
        clash = (self.function_words | self.pronouns) & self.known_verbs
        if clash:
            raise InputError(f"lexicon lists overlap on: {sorted(clash)[:5]}")
        both = self.function_words & self.pronouns
        if both:
            raise InputError(f"function and pronoun lists overlap on: {sorted(both)[:5]}")

    def is_verb_form(self, lower: str) -> bool:
        if lower in self.known_verbs:
            return True
        for suffix in self.verb_suffixes:
            if lower.endswith(suffix) and len(lower) >= len(suffix) + 2:
                return True
        return False


_SECTIONS = {"[function]": "function", "[pronoun]": "pronoun", "[verb]": "verb"}


def load_lexicon(path: str | Path) -> Lexicon:
    """Load a lexicon file: one word per line under [function]/[pronoun]/[verb]."""
    return parse_lexicon(Path(path).read_text(encoding="utf-8"))


def parse_lexicon(text: str) -> Lexicon:
    words: dict[str, set[str]] = {"function": set(), "pronoun": set(), "verb": set()}
    section: str | None = None
    for raw in text.splitlines():
        line = raw.strip()
        if not line:
            continue
        if line in _SECTIONS:
            section = _SECTIONS[line]
            continue
        if section is None:
            raise InputError(f"lexicon word {line!r} appears before any section header")
        words[section].add(line.lower())
    return Lexicon(
        function_words=frozenset(words["function"]),
        pronouns=frozenset(words["pronoun"]),
        known_verbs=frozenset(words["verb"]),
    )


def default_lexicon() -> Lexicon:
    data = resources.files("littext").joinpath("data/lexicon.txt").read_text(encoding="utf-8")
    return parse_lexicon(data)


# ---------------------------------------------------------------------------
# Tokenization and sentences
# ---------------------------------------------------------------------------

_TOKEN_RE = re.compile(
    r"""
    (?P<word>[^\W\d_]+(?:['’-][^\W\d_]+)*)   # letters, interior '’- allowed
    | (?P<number>\d+)
    | (?P<punct>[^\s])
    """,
    re.VERBOSE | re.UNICODE,
)

_TERMINATORS = {".", "!", "?"}
_ABBREVIATIONS = {"Mr", "Mrs", "St", "Dr"}
_CLOSERS = {'"', "”", "’", ")", "]"}


def tokenize(text: str) -> list[Token]:
    """Lossless tokenization with sentence indexing.

    Joining token texts with the inter-token source characters reconstructs
    the input exactly. Sentence breaks follow ./!/? when the next word is
    capitalized or the text ends; Mr/Mrs/St/Dr suppress the break.
    """
    raw: list[tuple[str, TokenKind, tuple[int, int]]] = []
    for m in _TOKEN_RE.finditer(text):
        if m.lastgroup == "word":
            kind = TokenKind.WORD
        elif m.lastgroup == "number":
            kind = TokenKind.NUMBER
        else:
            kind = TokenKind.PUNCT
        raw.append((m.group(), kind, m.span()))

    breaks = _sentence_breaks(raw)
    tokens: list[Token] = []
    sentence = 0
    for i, (t, kind, span) in enumerate(raw):
        tokens.append(Token(text=t, kind=kind, char_span=span, sentence_index=sentence))
        if i in breaks:
            sentence += 1
    return tokens


def _sentence_breaks(raw: list[tuple[str, TokenKind, tuple[int, int]]]) -> set[int]:
    """Indices of tokens after which a new sentence starts."""
    breaks: set[int] = set()
    for i, (t, kind, span) in enumerate(raw):
        if kind is not TokenKind.PUNCT or t not in _TERMINATORS:
            continue
        if t == "." and i > 0:
            prev_t, prev_kind, prev_span = raw[i - 1]
            if (
                prev_kind is TokenKind.WORD
                and prev_t in _ABBREVIATIONS
                and prev_span[1] == span[0]
            ):
                continue
        j = i + 1
        while j < len(raw) and raw[j][1] is TokenKind.PUNCT:
            j += 1
        if j < len(raw) and not (raw[j][1] is TokenKind.WORD and raw[j][0][0].isupper()):
            continue
        # pull trailing closers (quotes, brackets) into this sentence
        k = i
        while k + 1 < len(raw) and raw[k + 1][1] is TokenKind.PUNCT and raw[k + 1][0] in _CLOSERS:
            k += 1
        if k + 1 < len(raw):
            breaks.add(k)
    return breaks


def sentences(tokens: list[Token]) -> list[tuple[int, int]]:
    """Token-index spans (start, end) of each sentence, end exclusive."""
    spans: list[tuple[int, int]] = []
    start = 0
    for i in range(1, len(tokens) + 1):
        if i == len(tokens) or tokens[i].sentence_index != tokens[start].sentence_index:
            spans.append((start, i))
            start = i
    return spans


# ---------------------------------------------------------------------------
# Tagging
# ---------------------------------------------------------------------------


def tag_tokens(tokens: list[Token], lexicon: Lexicon) -> list[TaggedToken]:
    """Assign one tag per token by the fixed priority order.

    pronoun list > function list > verb (known form or suffix, lowercase
    words only) > proper noun (capitalized, with the sentence-initial
    two-capitals rule) > noun; punctuation and numbers tag OTHER.
    """
    first_word_of_sentence: set[int] = set()
    seen_sentences: set[int] = set()
    for i, tok in enumerate(tokens):
        if tok.kind is TokenKind.WORD and tok.sentence_index not in seen_sentences:
            first_word_of_sentence.add(i)
            seen_sentences.add(tok.sentence_index)

    tagged: list[TaggedToken] = []
    for i, tok in enumerate(tokens):
        tagged.append(TaggedToken(token=tok, tag=_tag_one(tokens, i, lexicon, first_word_of_sentence)))
    return tagged


def _tag_one(
    tokens: list[Token], i: int, lexicon: Lexicon, first_words: set[int]
) -> Tag:
    tok = tokens[i]
    if tok.kind is not TokenKind.WORD:
        return Tag.OTHER
    lower = tok.text.lower()
    if lower in lexicon.pronouns:
        return Tag.PRON
    if lower in lexicon.function_words:
        return Tag.FUNC
    capitalized = tok.text[0].isupper()
    if not capitalized and lexicon.is_verb_form(lower):
        return Tag.VERB
    if capitalized:
        if i not in first_words:
            return Tag.PROPN
        if _next_word_is_capitalized(tokens, i):
            return Tag.PROPN
    return Tag.NOUN


def _next_word_is_capitalized(tokens: list[Token], i: int) -> bool:
    sentence = tokens[i].sentence_index
    for j in range(i + 1, len(tokens)):
        if tokens[j].sentence_index != sentence:
            return False
        if tokens[j].kind is TokenKind.PUNCT:
            continue
        return tokens[j].kind is TokenKind.WORD and tokens[j].text[0].isupper()
    return False


# ---------------------------------------------------------------------------
# SVO extraction
# ---------------------------------------------------------------------------

_NAME_SEPARATORS = {",", "and"}
_REFLEXIVE_SUFFIXES = ("self", "selves")


def extract_svo(record: InquestRecord, lexicon: Lexicon) -> SvoResult:
    """Extract one (subject, verb, object) record per named subject.

    Subjects are the leading run of proper-noun name groups separated by
    commas or 'and'. A single verb (the first one after the subjects) and a
    single object are selected so that multi-verb sentences never fan out.
    The object is the head noun of the first noun phrase after the verb;
    a reflexive pronoun is kept verbatim; when the verb is followed by
    neither, the object is empty.
    """
    tokens = tokenize(record.text)
    tagged = tag_tokens(tokens, lexicon)
    sent = [tt for tt in tagged if tt.token.sentence_index == 0]

    groups, cursor = _leading_name_groups(sent)
    if not groups:
        return SvoResult(records=(), diagnostic=f"{record.id}: no named subject found")

    verb = None
    verb_at = cursor
    for k in range(cursor, len(sent)):
        if sent[k].tag is Tag.VERB:
            verb = sent[k].token.text.lower()
            verb_at = k
            break
    if verb is None:
        return SvoResult(records=(), diagnostic=f"{record.id}: no verb found")

    obj = _object_after(sent, verb_at + 1)
    records = tuple(
        SvoRecord(
            subject=name,
            verb=verb,
            object=obj,
            verdict=record.verdict,
            gender=record.gender,
            source_id=record.id,
        )
        for name in groups
    )
    return SvoResult(records=records)


def _leading_name_groups(sent: list[TaggedToken]) -> tuple[list[str], int]:
    """Names at the start of the sentence, plus the index just past them."""
    groups: list[str] = []
    i = 0
    last_end = 0
    while True:
        # skip separators between groups (but not before the first group)
        j = i
        if groups:
            while j < len(sent) and sent[j].token.text.lower() in _NAME_SEPARATORS:
                j += 1
        run: list[str] = []
        k = j
        while k < len(sent) and sent[k].tag is Tag.PROPN:
            run.append(sent[k].token.text)
            k += 1
        if not run:
            break
        groups.append(" ".join(run))
        last_end = k
        i = k
    return groups, last_end


def _object_after(sent: list[TaggedToken], start: int) -> str:
    noun_run: list[str] = []
    for k in range(start, len(sent)):
        tt = sent[k]
        if tt.tag in (Tag.NOUN, Tag.PROPN):
            noun_run.append(tt.token.text)
            continue
        if noun_run:
            break
        if tt.tag is Tag.PRON:
            lower = tt.token.text.lower()
            if lower.endswith(_REFLEXIVE_SUFFIXES):
                return lower
            continue
        if tt.tag is Tag.FUNC:
            continue
        break  # a verb, number, or punctuation before any noun: no object
    return noun_run[-1].lower() if noun_run else ""


# ---------------------------------------------------------------------------
# Paragraph summarization
# ---------------------------------------------------------------------------


def summarize_paragraph(paragraph: Paragraph, lexicon: Lexicon) -> tuple[str, str] | None:
    """Pick the dominant proper-noun group and an associated verb.

    The name is the most frequent proper-noun group (ties go to the earliest
    first occurrence). The verb is the first VERB after any occurrence of
    that name within the same sentence, falling back to the paragraph's most
    frequent verb. Returns None when the paragraph has no proper noun or no
    verb at all.
    """
    tagged = tag_tokens(tokenize(paragraph.text), lexicon)

    groups: list[tuple[str, int]] = []  # (name, index of group start)
    i = 0
    while i < len(tagged):
        if tagged[i].tag is Tag.PROPN:
            j = i
            run = []
            while j < len(tagged) and tagged[j].tag is Tag.PROPN:
                run.append(tagged[j].token.text)
                j += 1
            groups.append((" ".join(run), i))
            i = j
        else:
            i += 1
    if not groups:
        return None

    counts: dict[str, int] = {}
    first_at: dict[str, int] = {}
    for name, at in groups:
        counts[name] = counts.get(name, 0) + 1
        first_at.setdefault(name, at)
    best = min(counts, key=lambda n: (-counts[n], first_at[n]))

    for name, at in groups:
        if name != best:
            continue
        sentence = tagged[at].token.sentence_index
        for k in range(at + 1, len(tagged)):
            if tagged[k].token.sentence_index != sentence:
                break
            if tagged[k].tag is Tag.VERB:
                return (best, tagged[k].token.text.lower())

    verb_counts: dict[str, int] = {}
    verb_first: dict[str, int] = {}
    for k, tt in enumerate(tagged):
        if tt.tag is Tag.VERB:
            v = tt.token.text.lower()
            verb_counts[v] = verb_counts.get(v, 0) + 1
            verb_first.setdefault(v, k)
    if not verb_counts:
        return None
    fallback = min(verb_counts, key=lambda v: (-verb_counts[v], verb_first[v]))
    return (best, fallback)
