from __future__ import annotations

import pytest
from hypothesis import given
from hypothesis import strategies as st

from littext import corpus
from littext.errors import InputError


# ---------------------------------------------------------------------------
# parse_inquests
# ---------------------------------------------------------------------------

HEADER = "id\ttext\tverdict\tgender"


def test_parse_inquests_basic_row():
    data = f"{HEADER}\n7\tMary Roberts drowned herself.\tSuicide\tFemale\n".encode()
    parsed = corpus.parse_inquests(data)
    assert parsed.skipped == 0
    (rec,) = parsed.records
    assert rec.id == "7"
    assert rec.verdict is corpus.Verdict.SUICIDE
    assert rec.gender is corpus.Gender.FEMALE


def test_parse_inquests_empty_body():
    parsed = corpus.parse_inquests(f"{HEADER}\n".encode())
    assert parsed.records == ()
    assert parsed.skipped == 0


def test_parse_inquests_unknown_verdict_skipped():
    data = f"{HEADER}\n1\tJohn Smith fell.\tMisadventure\tMale\n".encode()
    parsed = corpus.parse_inquests(data)
    assert parsed.records == ()
    assert parsed.skipped == 1


def test_parse_inquests_missing_header_is_hard_error():
    with pytest.raises(InputError):
        corpus.parse_inquests(b"1\ttext\tSuicide\tMale\n")


def test_parse_inquests_crlf_and_order():
    data = (
        f"{HEADER}\r\n1\tAnn Ward fell.\tAccident\tFemale\r\n"
        "2\tJohn Cole fell.\tAccident\tMale\r\n"
    ).encode()
    parsed = corpus.parse_inquests(data)
    assert [r.id for r in parsed.records] == ["1", "2"]


# ---------------------------------------------------------------------------
# extract_utterances
# ---------------------------------------------------------------------------


def test_attribution_after_quote_speech_verb():
    res = corpus.extract_utterances('"No room!" cried the March Hare.')
    assert [u.speaker for u in res.utterances] == ["March Hare"]
    assert res.utterances[0].text == "No room!"


def test_no_quotes_yields_no_utterances():
    res = corpus.extract_utterances("A quiet paragraph without any speech at all.")
    assert res.utterances == ()
    assert not res.unbalanced


def test_alternation_third_bare_quote_goes_to_first_speaker():
    text = (
        '"Hello there," said Alice.\n\n'
        '"Good day," said the Hatter.\n\n'
        '"Tell me more."\n'
    )
    res = corpus.extract_utterances(text)
    assert [u.speaker for u in res.utterances] == ["Alice", "Hatter", "Alice"]


def test_same_paragraph_continuation_keeps_speaker():
    text = '"How should I know?" said Alice. "It is no business of mine."'
    res = corpus.extract_utterances(text)
    assert [u.speaker for u in res.utterances] == ["Alice", "Alice"]


def test_unbalanced_quotes_sets_flag_and_keeps_balanced_prefix():
    res = corpus.extract_utterances('"One." said Alice. Then she opened: "Two')
    assert res.unbalanced
    assert [u.text for u in res.utterances] == ["One."]


def test_unknown_speaker_without_context():
    res = corpus.extract_utterances('Somewhere a voice called "over here" and faded.')
    assert [u.speaker for u in res.utterances] == [corpus.UNKNOWN_SPEAKER]


def test_alice_fixture_matches_hand_labels(alice_text):
    from .conftest import FIXTURES

    labels = {}
    for line in (FIXTURES / "alice_labels.tsv").read_text().splitlines()[1:]:
        idx, speaker = line.split("\t")
        labels[int(idx)] = speaker
    res = corpus.extract_utterances(alice_text)
    assert len(res.utterances) == len(labels)
    mismatches = [
        (u.index, u.speaker, labels[u.index])
        for u in res.utterances
        if u.speaker != labels[u.index]
    ]
    assert mismatches == []


def test_utterance_spans_reslice_source_and_are_disjoint(alice_text):
    res = corpus.extract_utterances(alice_text)
    prev_end = -1
    for u in res.utterances:
        s, e = u.char_span
        assert alice_text[s:e] == u.text
        assert s > prev_end
        prev_end = e


def test_addressee_next_then_previous():
    text = (
        '"First," said Alice.\n\n"Second," said the Hatter.\n\n"Third," said Alice.\n'
    )
    res = corpus.extract_utterances(text)
    assert [u.addressee for u in res.utterances] == ["Hatter", "Alice", "Hatter"]


# ---------------------------------------------------------------------------
# utterance TSV bypass format
# ---------------------------------------------------------------------------


def test_parse_utterances_tsv_roundtrip(alice_utterances_tsv):
    utts = corpus.parse_utterances_tsv(alice_utterances_tsv)
    assert len(utts) == 50
    assert utts[0].speaker == "March Hare"
    assert utts[0].addressee == "Alice"
    indices = [u.index for u in utts]
    assert indices == sorted(indices)
    spans = [u.char_span for u in utts]
    assert all(b[0] > a[1] for a, b in zip(spans, spans[1:]))


def test_parse_utterances_tsv_bad_header():
    with pytest.raises(InputError):
        corpus.parse_utterances_tsv(b"speaker\ttext\nAlice\thi\n")


# ---------------------------------------------------------------------------
# parse_songs
# ---------------------------------------------------------------------------

SONG_HEADER = "rank,artist,title,sales,lyric_opening"


def test_parse_songs_sorted_by_sales_desc():
    data = f"{SONG_HEADER}\n1,A,T1,1000,la\n2,B,T2,2000,la\n".encode()
    songs = corpus.parse_songs(data)
    assert [s.sales for s in songs] == [2000, 1000]


def test_parse_songs_empty_body():
    assert corpus.parse_songs(f"{SONG_HEADER}\n".encode()) == ()


def test_parse_songs_quoted_comma_title():
    data = f'{SONG_HEADER}\n1,A,"Love, Actually",10,la\n'.encode()
    (song,) = corpus.parse_songs(data)
    assert song.title == "Love, Actually"


def test_parse_songs_duplicate_rank_is_error():
    data = f"{SONG_HEADER}\n1,A,T,10,la\n1,B,U,20,la\n".encode()
    with pytest.raises(InputError):
        corpus.parse_songs(data)


def test_parse_songs_negative_sales_is_error():
    data = f"{SONG_HEADER}\n1,A,T,-5,la\n".encode()
    with pytest.raises(InputError):
        corpus.parse_songs(data)


# ---------------------------------------------------------------------------
# split_paragraphs
# ---------------------------------------------------------------------------


def test_split_paragraphs_blank_line_boundary():
    paras = corpus.split_paragraphs("A\n\nB")
    assert [p.text for p in paras] == ["A", "B"]
    assert [p.index for p in paras] == [0, 1]


def test_split_paragraphs_single_newline_stays_together():
    paras = corpus.split_paragraphs("A\nB")
    assert [p.text for p in paras] == ["A\nB"]


def test_split_paragraphs_only_blanks():
    assert corpus.split_paragraphs("\n\n") == []


@given(st.text(alphabet="ab \n\t.", max_size=200))
def test_split_paragraphs_covers_every_nonblank_char_once(text):
    paras = corpus.split_paragraphs(text)
    covered = set()
    for p in paras:
        s, e = p.char_span
        assert text[s:e] == p.text
        assert not p.text[0].isspace() and not p.text[-1].isspace()
        span = set(range(s, e))
        assert not (span & covered)
        covered |= span
    nonblank = {i for i, ch in enumerate(text) if not ch.isspace()}
    assert nonblank <= covered
