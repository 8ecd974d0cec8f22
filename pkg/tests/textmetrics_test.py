import math
import os
from datetime import datetime, timezone
from types import MappingProxyType

import numpy as np
import pytest

from textnet.constants import *
from textnet.exceptions import EmptyCorpus, PartitionMismatch
from textnet.ingest import load_store
from textnet.lexicon import load_lexicon, load_manifest
from textnet.models import Corpus, MessageStore, RawMessage, SectorPartition
from textnet.network import build_information_network, compute_vertex_metrics, partition_by_strength
from textnet.textmetrics import (
    author_features,
    build_corpus,
    char_metrics,
    compute_bundle,
    message_metrics,
    pos_metrics,
    sentence_metrics,
    split_sentences,
    strip_quoted,
    token_metrics,
    tokenize,
    word_size_metrics,
)

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


@pytest.fixture
def english():
    return load_manifest(ENGLISH_MANIFEST)


@pytest.fixture
def fixture_store():
    return load_store(os.path.join(FIXTURES, "list.mbox"))


def _get_corpus(*bodies, scope=GENERAL):
    return Corpus(messages=tuple(("a@example.org", body) for body in bodies), scope=scope)


def _get_partition(store):
    metrics = compute_vertex_metrics(build_information_network(store))
    return metrics, partition_by_strength(metrics)


def test_tokenize():
    """
    Words keep inner apostrophes, punctuation stands alone, alphanumerics stay whole.
    """

    assert tokenize("") == []
    assert tokenize("Hi, don't go.") == ["Hi", ",", "don't", "go", "."]
    assert tokenize("a1b2") == ["a1b2"]
    assert tokenize("wait...") == ["wait", ".", ".", "."]


def test_tokenize_keeps_content():
    """
    Joining the tokens changes no letter or digit.
    """

    text = "Version 2.1 isn't out; it'll ship in Q3 (maybe) â cafÃ©!"
    kept = [c for c in text if c.isalnum()]
    assert [c for c in " ".join(tokenize(text)) if c.isalnum()] == kept


def test_split_sentences():
    """
    Splits after terminal punctuation before a capital and at blank lines.
    """

    assert split_sentences("") == []
    assert split_sentences("Hi. Bye!") == ["Hi.", "Bye!"]
    assert split_sentences("e.g. this") == ["e.g. this"]
    assert split_sentences("first part\n\nsecond part") == ["first part", "second part"]
    assert split_sentences("What?! Really.") == ["What?!", "Really."]


def test_strip_quoted():
    """
    Lines starting with ">" are dropped.
    """

    assert strip_quoted("> old text\n  >> older\nnew text") == "new text"


def test_char_metrics():
    """
    Hand-counted character ratios of "Ab c.".
    """

    metrics = char_metrics(_get_corpus("Ab c."))
    assert metrics.n_chars == 5
    assert metrics.pct_space_of_char == pytest.approx(20.0)
    assert metrics.pct_letter_of_nonspace == pytest.approx(75.0)
    assert metrics.pct_punct_of_nonspace == pytest.approx(25.0)
    assert metrics.pct_upper_of_letters == pytest.approx(100 / 3)
    assert metrics.pct_vowel_of_letters == pytest.approx(100 / 3)
    assert metrics.degenerate == frozenset()

    symbols = char_metrics(_get_corpus("a+€ 1."))
    assert symbols.pct_other_of_nonspace == pytest.approx(40.0)
    assert symbols.pct_letter_of_nonspace == pytest.approx(20.0)
    assert symbols.pct_digit_of_nonspace == pytest.approx(20.0)
    assert symbols.pct_punct_of_nonspace == pytest.approx(20.0)


def test_char_metrics_degenerate():
    """
    An all-space corpus reports zero with degenerate flags; an empty one fails.
    """

    metrics = char_metrics(_get_corpus("   "))
    assert metrics.pct_punct_of_nonspace == 0.0
    assert "pct_punct_of_nonspace" in metrics.degenerate
    assert "pct_vowel_of_letters" in metrics.degenerate
    assert "pct_space_of_char" not in metrics.degenerate

    with pytest.raises(EmptyCorpus):
        char_metrics(_get_corpus())


def test_token_metrics(lex):
    """
    Hand-counted token ratios of "the the dog .".
    """

    metrics = token_metrics(_get_corpus("the the dog ."), lex)
    assert metrics.n_tokens == 4
    assert metrics.pct_punct_tokens == pytest.approx(25.0)
    assert metrics.pct_known_of_nonpunct == pytest.approx(100.0)
    assert metrics.lexical_diversity == pytest.approx(200 / 3)
    assert metrics.token_diversity == pytest.approx(75.0)
    assert metrics.pct_kwsw_of_kw == pytest.approx(200 / 3)
    assert metrics.pct_kwss_of_kw == pytest.approx(100 / 3)
    assert metrics.chars_per_token == pytest.approx(10 / 4)

    distinct = token_metrics(_get_corpus("dog cat bb"), lex)
    assert distinct.token_diversity == 100.0


def test_token_metrics_degenerate(lex):
    """
    A punctuation-only corpus flags the known-word ratios instead of failing.
    """

    metrics = token_metrics(_get_corpus("."), lex)
    assert metrics.lexical_diversity == 0.0
    assert "lexical_diversity" in metrics.degenerate
    assert "pct_known_of_nonpunct" in metrics.degenerate
    assert "pct_punct_tokens" not in metrics.degenerate


def test_contractions_and_unknown_stopwords(lex):
    """
    Contractions count among non-punctuation tokens; stopwords outside the wordlist
    count as ukwsw.
    """

    metrics = token_metrics(_get_corpus("don't go of the dog"), lex)
    assert metrics.n_contractions == 1
    assert metrics.pct_contractions_of_kw == pytest.approx(25.0)
    assert metrics.pct_ukwsw_of_kw == pytest.approx(25.0)


def test_word_size_metrics(lex):
    """
    Sizes over occurrences and over distinct forms; absent classes are None.
    """

    metrics = word_size_metrics(_get_corpus("a a bb"), lex)
    assert metrics.skw.mean == pytest.approx(4 / 3)
    assert metrics.skw.distinct_mean == pytest.approx(1.5)
    assert metrics.ssw.mean == 1.0
    assert metrics.ssw.std == 0.0

    no_stopwords = word_size_metrics(_get_corpus("dog bb"), lex)
    assert no_stopwords.ssw is None
    assert "ssw" in no_stopwords.absent()
    assert no_stopwords.skwss.mean == 3.0


def test_sentence_and_message_metrics(lex):
    """
    Sentence sizes include terminal punctuation; identical messages have no spread.
    """

    corpus = _get_corpus("Hi. Bye!")
    sentences = sentence_metrics(corpus, lex)
    assert sentences.n_sents == 2
    assert sentences.chars_per_sent_mean == pytest.approx(3.5)
    assert sentences.tokens_per_sent_mean == pytest.approx(2.0)
    assert message_metrics(corpus).sents_per_msg_mean == 2.0

    twice = message_metrics(_get_corpus("Same text.", "Same text."))
    assert twice.chars_per_msg_std == 0.0
    assert twice.chars_per_msg_mean == 10.0


def test_pos_metrics(lex):
    """
    One third each for DT, NN and VBZ; group subtotals follow.
    """

    metrics = pos_metrics(_get_corpus("the dog runs"), lex)
    assert metrics.tags["NN"] == pytest.approx(100 / 3)
    assert metrics.tags["DT"] == pytest.approx(100 / 3)
    assert metrics.tags["VBZ"] == pytest.approx(100 / 3)
    assert metrics.groups["nouns"] == pytest.approx(100 / 3)
    assert metrics.n_tagged == 3

    punctuation = pos_metrics(_get_corpus("!"), lex)
    assert punctuation.degenerate
    assert punctuation.n_tagged == 0


def test_table_identities(english, fixture_store):
    """
    Non-space character shares sum to 100, the four known-word classes sum to 100 and tag
    groups equal the sum of their members on every scope of the golden archive.
    """

    _, partition = _get_partition(fixture_store)
    for scope in SCOPES:
        corpus = build_corpus(fixture_store, partition, scope)
        bundle = compute_bundle(corpus, english)
        char = bundle.char
        nonspace = (char.pct_letter_of_nonspace + char.pct_digit_of_nonspace +
                    char.pct_punct_of_nonspace + char.pct_other_of_nonspace)
        assert nonspace == pytest.approx(100.0, abs=0.01)

        token = bundle.token
        split = (token.pct_kw_sw_with_synset_of_kw + token.pct_sw_without_synset_of_kw +
                 token.pct_kw_nonsw_synset_of_kw + token.pct_kw_nonsw_nosynset_of_kw)
        assert split == pytest.approx(100.0, abs=0.01)

        pos = bundle.pos
        for group, members in TAG_GROUPS:
            assert pos.groups[group] == pytest.approx(sum(pos.tags[t] for t in members), abs=0.01)
        assert sum(pos.groups.values()) + pos.untracked == pytest.approx(100.0, abs=0.01)


def test_aggregation(english, fixture_store):
    """
    Counts over the general corpus equal the sums over the three sectors.
    """

    _, partition = _get_partition(fixture_store)
    general = compute_bundle(build_corpus(fixture_store, partition, GENERAL), english)
    sectors = [compute_bundle(build_corpus(fixture_store, partition, s), english) for s in SECTORS]
    assert general.char.n_chars == sum(b.char.n_chars for b in sectors)
    assert general.token.n_tokens == sum(b.token.n_tokens for b in sectors)
    assert general.sentence.n_sents == sum(b.sentence.n_sents for b in sectors)
    assert general.pos.n_tagged == sum(b.pos.n_tagged for b in sectors)


def test_build_corpus(fixture_store):
    """
    Sector corpora hold only their authors' messages; quotes are stripped by default.
    """

    _, partition = _get_partition(fixture_store)
    hub = build_corpus(fixture_store, partition, HUB)
    assert len(hub) == 19
    assert hub.scope == HUB
    assert not any(line.startswith(">") for body in hub.bodies() for line in body.split("\n"))

    raw = build_corpus(fixture_store, partition, HUB, strip_quotes=False)
    assert any(line.startswith(">") for body in raw.bodies() for line in body.split("\n"))

    single = build_corpus(fixture_store, scope=SINGLE_AUTHOR, author="frank@example.org")
    assert len(single) == 3

    with pytest.raises(PartitionMismatch):
        build_corpus(fixture_store, SectorPartition(labels=MappingProxyType({})), HUB)


def test_single_author_features(english):
    """
    A lone author gets one row with zero topological values.
    """

    store = MessageStore.from_messages([
        RawMessage("<m1>", None, "a@example.org", datetime(2019, 1, 1, tzinfo=timezone.utc), "The dog runs."),
        RawMessage("<m2>", "<m1>", "a@example.org", datetime(2019, 1, 2, tzinfo=timezone.utc), "It works."),
    ])
    metrics = compute_vertex_metrics(build_information_network(store))
    partition = SectorPartition(labels=MappingProxyType({"a@example.org": HUB}))
    features = author_features(store, partition, metrics, english)
    assert features.values.shape == (1, len(FEATURE_COLUMNS))
    for name in ("d", "d_i", "d_o", "s", "s_i", "s_o", "bc", "tri", "cc"):
        assert features.column(name)[0] == 0.0
    assert features.column("sector")[0] == SECTOR_INDEX[HUB]
    assert features.column("n_msgs")[0] == 2


def test_fixture_features(english, fixture_store):
    """
    One row per author in id order, message counts and strengths as counted by hand,
    and identical matrices on repeated calls.
    """

    metrics, partition = _get_partition(fixture_store)
    features = author_features(fixture_store, partition, metrics, english)
    assert features.authors == tuple(sorted(features.authors))
    assert features.columns == FEATURE_COLUMNS
    assert list(features.column("n_msgs")) == [19, 13, 6, 5, 4, 3]
    assert list(features.column("s")) == [30, 19, 9, 8, 6, 2]
    assert list(features.column("sector")) == [2, 1, 0, 0, 0, 0]
    assert np.all(features.column("pos_nouns") > 0)

    again = author_features(fixture_store, partition, metrics, english)
    assert np.array_equal(features.values, again.values, equal_nan=True)

    with pytest.raises(PartitionMismatch):
        author_features(fixture_store, SectorPartition(labels=MappingProxyType({})), metrics, english)


def test_textual_absent_markers(lex):
    """
    Authors whose text has no known words carry NaN in the known-word columns.
    """

    store = MessageStore.from_messages([
        RawMessage("<m1>", None, "a@x.org", datetime(2019, 1, 1, tzinfo=timezone.utc), "!!!"),
    ])
    metrics = compute_vertex_metrics(build_information_network(store))
    partition = SectorPartition(labels=MappingProxyType({"a@x.org": PERIPHERY}))
    features = author_features(store, partition, metrics, lex)
    assert math.isnan(features.column("lexical_diversity")[0])
    assert math.isnan(features.column("mean_skw")[0])
    assert math.isnan(features.column("pos_nouns")[0])
    assert features.column("n_chars")[0] == 3
