from __future__ import annotations

import random

import pytest
from hypothesis import given
from hypothesis import strategies as st

from littext import corpus, repeats, textproc
from littext.errors import InputError
from littext.repeats import KeywordRule, PhraseKey

from .oracles import brute_force_repeats


def tag(text: str, lexicon):
    return textproc.tag_tokens(textproc.tokenize(text), lexicon)


def utterance(index: int, speaker: str, text: str) -> corpus.Utterance:
    return corpus.Utterance(
        index=index, speaker=speaker, addressee="Other", text=text, char_span=(0, len(text))
    )


# ---------------------------------------------------------------------------
# phrase_key
# ---------------------------------------------------------------------------


def test_phrase_key_is_order_insensitive(lexicon):
    a = repeats.phrase_key(tag("I see what I eat", lexicon))
    b = repeats.phrase_key(tag("I eat what I see", lexicon))
    assert a == b
    assert a.words == ("PRON", "PRON", "eat", "see", "what")


def test_phrase_key_merges_pronoun_variants(lexicon):
    a = repeats.phrase_key(tag("Off with his head", lexicon))
    b = repeats.phrase_key(tag("Off with her head", lexicon))
    assert a == b
    assert "PRON" in a.words


@given(
    st.lists(
        st.sampled_from("the of and cat hat tea moral queen his her".split()),
        min_size=1,
        max_size=8,
    )
)
def test_phrase_key_equals_key_of_reversal(words):
    lexicon = textproc.default_lexicon()
    a = repeats.phrase_key(tag(" ".join(words), lexicon))
    b = repeats.phrase_key(tag(" ".join(reversed(words)), lexicon))
    assert a == b


def test_phrase_key_requires_sorted_words():
    with pytest.raises(ValueError):
        PhraseKey(words=("b", "a"))


# ---------------------------------------------------------------------------
# detect_repeats
# ---------------------------------------------------------------------------


def test_detect_repeats_counts_repeated_phrase(lexicon):
    utts = [
        utterance(0, "Duchess", "It is so. And the moral of that is. Be kind."),
        utterance(1, "Duchess", "Ah! The moral of that is. Mind your own business."),
    ]
    results = repeats.detect_repeats(utts, lexicon)
    keys = {r.key.words: r.support for r in results}
    assert keys[("is", "moral", "of", "that", "the")] == 2


def test_detect_repeats_excludes_function_word_only_sets(lexicon):
    utts = [
        utterance(0, "A", "it was of the and by the far."),
        utterance(1, "A", "so was of the and by the near."),
    ]
    results = repeats.detect_repeats(utts, lexicon)
    for r in results:
        assert any(
            w != repeats.PRON_PLACEHOLDER and w not in lexicon.function_words
            for w in r.key.words
        )


def test_detect_repeats_single_utterance_per_speaker_usually_empty(lexicon):
    utts = [
        utterance(0, "A", "nothing repeats in this line"),
        utterance(1, "B", "and nothing repeats here either"),
    ]
    assert repeats.detect_repeats(utts, lexicon) == []


def test_detect_repeats_same_utterance_disjoint_occurrences_count(lexicon):
    utts = [
        utterance(0, "Hatter", "I see what I eat is not the same as I eat what I see.")
    ]
    results = repeats.detect_repeats(utts, lexicon)
    assert any(
        r.key.words == ("PRON", "PRON", "eat", "see", "what") and r.support == 2
        for r in results
    )


def test_detect_repeats_overlapping_hits_are_one_occurrence(lexicon):
    # shifted windows of a single phrase must not count as repetition
    utts = [utterance(0, "A", "it was not very civil of you to offer it to me now.")]
    assert repeats.detect_repeats(utts, lexicon) == []


def test_detect_repeats_windows_do_not_cross_sentences(lexicon):
    utts = [
        utterance(0, "A", "the red queen. Waved her flag."),
        utterance(1, "A", "the red queen waved. Her flag."),
    ]
    results = repeats.detect_repeats(utts, lexicon, n_range=(4, 4))
    assert results == []


def test_detect_repeats_bad_range(lexicon):
    with pytest.raises(InputError):
        repeats.detect_repeats([], lexicon, n_range=(0, 3))


# ---------------------------------------------------------------------------
# brute-force oracle equivalence (small; the acceptance suite runs 100 seeds)
# ---------------------------------------------------------------------------

VOCAB = (
    "the of and with off moral head queen tea cat hat box i you his her "
    "see eat what is was very room time door king"
).split()
PUNCT = [".", ",", "!", "?"]


def random_corpus(rng: random.Random):
    utts = []
    for i in range(rng.randint(1, 20)):
        n = rng.randint(1, 30)
        words = []
        for _ in range(n):
            if rng.random() < 0.12:
                words.append(rng.choice(PUNCT))
            else:
                words.append(rng.choice(VOCAB))
        text = " ".join(words)
        utts.append(utterance(i, rng.choice("ABC"), text))
    return utts


def as_comparable(results):
    return {
        (r.speaker, r.key.words): [
            (o.utterance_index, o.token_span[0], o.token_span[1]) for o in r.occurrences
        ]
        for r in results
    }


@pytest.mark.parametrize("seed", range(12))
def test_detect_repeats_matches_brute_force(seed, lexicon):
    rng = random.Random(seed)
    utts = random_corpus(rng)
    got = as_comparable(repeats.detect_repeats(utts, lexicon))
    expected = brute_force_repeats(utts, lexicon)
    assert got == expected


def test_maximality_no_surviving_key_fully_nested(lexicon):
    rng = random.Random(99)
    utts = random_corpus(rng)
    results = repeats.detect_repeats(utts, lexicon)
    for r in results:
        for other in results:
            if other.speaker != r.speaker or len(other.key.words) <= len(r.key.words):
                continue
            if other.support < r.support:
                continue
            nested = all(
                any(
                    o2.utterance_index == o1.utterance_index
                    and o2.token_span[0] <= o1.token_span[0]
                    and o2.token_span[1] >= o1.token_span[1]
                    for o2 in other.occurrences
                )
                for o1 in r.occurrences
            )
            assert not nested


# ---------------------------------------------------------------------------
# colors
# ---------------------------------------------------------------------------


def _results(lexicon, n):
    utts = []
    phrases = ["the moral of that is", "off with his head", "birds of a feather flock"]
    for k in range(n):
        p = phrases[k % len(phrases)]
        utts.append(utterance(2 * k, f"S{k}", f"{p} one."))
        utts.append(utterance(2 * k + 1, f"S{k}", f"{p} two."))
    return repeats.detect_repeats(utts, lexicon)


def test_assign_colors_single(lexicon):
    results = repeats.assign_phrase_colors(_results(lexicon, 1), ["#A", "#B"])
    assert [r.color for r in results] == ["#A"]


def test_assign_colors_round_robin(lexicon):
    results = repeats.assign_phrase_colors(_results(lexicon, 3), ["#A", "#B"])
    assert [r.color for r in results] == ["#A", "#B", "#A"]


def test_assign_colors_deterministic(lexicon):
    base = _results(lexicon, 3)
    once = repeats.assign_phrase_colors(base, ["#A", "#B", "#C"])
    twice = repeats.assign_phrase_colors(base, ["#A", "#B", "#C"])
    assert once == twice


def test_assign_colors_empty_palette(lexicon):
    with pytest.raises(InputError):
        repeats.assign_phrase_colors([], [])


# ---------------------------------------------------------------------------
# keyword rules
# ---------------------------------------------------------------------------


def test_match_keywords_whole_word():
    rules = [KeywordRule("Christmas", "#0F0")]
    matches = repeats.match_keywords("All I want for Christmas", rules)
    assert [(m.span, m.color) for m in matches] == [((15, 24), "#0F0")]


def test_match_keywords_no_partial_word():
    assert repeats.match_keywords("lovely", [KeywordRule("love", "#F00")]) == []


def test_match_keywords_no_rules():
    assert repeats.match_keywords("anything at all", []) == []


def test_match_keywords_earlier_rule_wins_on_overlap():
    rules = [KeywordRule("christmas eve", "#A"), KeywordRule("eve", "#B")]
    matches = repeats.match_keywords("on christmas eve we sang", rules)
    assert [(m.span, m.color) for m in matches] == [((3, 16), "#A")]


def test_match_keywords_case_insensitive_multiple():
    matches = repeats.match_keywords(
        "Love is love is LOVE", [KeywordRule("love", "#F00")]
    )
    assert len(matches) == 3
    assert matches == sorted(matches, key=lambda m: m.span)


def test_parse_keyword_rules_duplicate_rejected():
    with pytest.raises(InputError):
        repeats.parse_keyword_rules("love=#F00\nLOVE=#0F0\n")


def test_parse_keyword_rules_roundtrip():
    rules = repeats.parse_keyword_rules("Christmas=#90EE90\n\nlove=#F08080\n")
    assert [(r.keyword, r.color) for r in rules] == [
        ("Christmas", "#90EE90"),
        ("love", "#F08080"),
    ]
