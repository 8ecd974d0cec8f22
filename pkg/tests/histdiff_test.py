import os

import pytest

from textnet.constants import *
from textnet.exceptions import EmptyClass, NormalizationMismatch
from textnet.histdiff import (
    EXISTENT,
    INCIDENT,
    build_histograms,
    crossing_length,
    cumulative_positive_difference,
    histograms_from_words,
)
from textnet.ingest import load_store
from textnet.lexicon import load_lexicon, load_manifest
from textnet.models import Corpus, SizeHistogram
from textnet.textmetrics import build_corpus

FIXTURES = os.path.join(os.path.dirname(__file__), "fixtures")
LEXICON_DIR = os.path.join(FIXTURES, "lexicon")
ENGLISH_MANIFEST = os.path.join(FIXTURES, "english", "manifest.json")


@pytest.fixture
def lex():
    return load_lexicon({
        "wordlist": os.path.join(LEXICON_DIR, "words.txt"),
        "stopwords": os.path.join(LEXICON_DIR, "stopwords.txt"),
        "wordnet": os.path.join(LEXICON_DIR, "wordnet"),
        "contractions": os.path.join(LEXICON_DIR, "contractions.txt"),
        "tag_lexicon": os.path.join(LEXICON_DIR, "tag_lexicon.tsv"),
    })


def _get_corpus(*bodies):
    return Corpus(messages=tuple(("a@example.org", body) for body in bodies), scope=GENERAL)


def _get_histogram(masses, normalization=INCIDENT):
    return SizeHistogram(masses=masses, normalization=normalization, word_class="kw")


def test_build_histograms(lex):
    """
    Incident and existent masses of "a a bb".
    """

    incident, existent = build_histograms(_get_corpus("a a bb"), lex, "kw")
    assert incident.masses == pytest.approx({1: 2 / 3, 2: 1 / 3})
    assert existent.masses == pytest.approx({1: 0.5, 2: 0.5})
    assert incident.normalization == INCIDENT
    assert existent.normalization == EXISTENT


def test_distinct_words(lex):
    """
    Without repetitions the two histograms coincide and nothing crosses.
    """

    pair = build_histograms(_get_corpus("dog cat bb"), lex, "kw")
    assert pair[0].masses == pair[1].masses
    result = cumulative_positive_difference(pair)
    assert result.positive_diff == 0.0
    assert result.l1_diff == 0.0
    assert crossing_length(pair) is None


def test_empty_class(lex):
    """
    A class absent from the corpus can't be histogrammed.
    """

    with pytest.raises(EmptyClass):
        build_histograms(_get_corpus("dog bb"), lex, "sw")
    with pytest.raises(EmptyClass):
        histograms_from_words([], "kw")


def test_differences(lex):
    """
    Positive part 1/6 and L1 distance 1/3 for "a a bb".
    """

    result = cumulative_positive_difference(build_histograms(_get_corpus("a a bb"), lex, "kw"))
    assert result.positive_diff == pytest.approx(1 / 6)
    assert result.l1_diff == pytest.approx(1 / 3)
    assert result.word_class == "kw"


def test_normalization_mismatch():
    """
    Histograms with different total mass are refused.
    """

    pair = (_get_histogram({1: 1.0}), _get_histogram({1: 0.5}, EXISTENT))
    with pytest.raises(NormalizationMismatch):
        cumulative_positive_difference(pair)


def test_crossing_length():
    """
    The crossing is the first length where a positive difference stops being positive.
    """

    incident = _get_histogram({2: 0.2, 3: 0.3, 4: 0.3, 5: 0.1, 6: 0.1})
    existent = _get_histogram({2: 0.1, 3: 0.2, 4: 0.2, 5: 0.2, 6: 0.3}, EXISTENT)
    assert crossing_length((incident, existent)) == 5
    assert crossing_length((incident, incident)) is None


def test_long_words_share_last_bin():
    """
    Lengths above the tracked maximum are counted at that maximum.
    """

    incident, _ = histograms_from_words(["x" * 40, "y" * 30, "ab"])
    assert incident.masses == pytest.approx({2: 1 / 3, MAX_WORD_LENGTH: 2 / 3})


def test_identities_on_fixture():
    """
    L1 is twice the positive part for every class, and duplicating every message
    changes nothing.
    """

    lex = load_manifest(ENGLISH_MANIFEST)
    store = load_store(os.path.join(FIXTURES, "list.mbox"))
    corpus = build_corpus(store)
    doubled = Corpus(messages=corpus.messages + corpus.messages, scope=GENERAL)
    for word_class in WORD_CLASSES:
        pair = build_histograms(corpus, lex, word_class)
        result = cumulative_positive_difference(pair)
        assert result.l1_diff == pytest.approx(2 * result.positive_diff, abs=1e-12)
        assert 0.0 <= result.positive_diff <= 1.0

        again = build_histograms(doubled, lex, word_class)
        assert again[0].masses == pytest.approx(pair[0].masses, abs=1e-12)
        assert again[1].masses == pair[1].masses
        assert cumulative_positive_difference(again).l1_diff == pytest.approx(result.l1_diff, abs=1e-12)


def test_relabeled_bins():
    """
    The positive part and the L1 distance depend on the masses only, not on which
    lengths carry them.
    """

    incident = _get_histogram({2: 0.2, 3: 0.3, 4: 0.3, 5: 0.1, 6: 0.1})
    existent = _get_histogram({2: 0.1, 3: 0.2, 4: 0.2, 5: 0.2, 6: 0.3}, EXISTENT)
    result = cumulative_positive_difference((incident, existent))

    relabel = {2: 7, 3: 1, 4: 12, 5: 3, 6: 9}
    moved = (
        _get_histogram({relabel[k]: v for k, v in incident.masses.items()}),
        _get_histogram({relabel[k]: v for k, v in existent.masses.items()}, EXISTENT),
    )
    again = cumulative_positive_difference(moved)
    assert again.positive_diff == pytest.approx(result.positive_diff, abs=1e-12)
    assert again.l1_diff == pytest.approx(result.l1_diff, abs=1e-12)
    assert result.positive_diff == pytest.approx(0.3)
