"""
Tokenization, sentence segmentation and the measure families computed over a corpus:
characters, tokens, word sizes, sentences, messages and Brown tag incidence. Also
builds the per-author feature matrix.
"""

import logging
import math
import unicodedata
from collections import Counter

import numpy as np
from nltk.probability import FreqDist
from nltk.tokenize import RegexpTokenizer

from textnet.constants import *
from textnet.exceptions import EmptyCorpus, PartitionMismatch
from textnet.lexicon import classify_token, normal_form, pos_tag
from textnet.models import (
    CharMetrics,
    Corpus,
    FeatureMatrix,
    MessageMetrics,
    MetricBundle,
    PosMetrics,
    SentenceMetrics,
    SizeMetrics,
    SizeStats,
    TokenMetrics,
)
from textnet.utils import mean_std

logger = logging.getLogger(__name__)

# words keep inner apostrophes; any other non-space character stands alone
TOKENIZER = RegexpTokenizer(r"[^\W_]+(?:['’][^\W_]+)*|\S")
SENTENCE_SPLITTER = RegexpTokenizer(r"(?<=[.!?])\s+(?=[A-Z])|\s*\n\s*\n\s*", gaps=True)


def tokenize(text):
    if not text:
        return []
    return TOKENIZER.tokenize(text)


def split_sentences(text):
    """
    Splits after [.!?] when whitespace and a capital letter follow, and at blank lines.
    """

    if not text:
        return []
    pieces = (piece.strip() for piece in SENTENCE_SPLITTER.tokenize(text))
    return [piece for piece in pieces if piece]


def strip_quoted(body):
    return "\n".join(line for line in body.split("\n") if not line.lstrip().startswith(">"))


def build_corpus(store, partition=None, scope=GENERAL, strip_quotes=True, author=None):
    """
    Gathers the messages of one scope. Sector scopes need the partition; the
    single-author scope needs the author.

    : param MessageStore store: messages of one list
    : param SectorPartition partition: sector labels
    : param str scope: general, a sector name or single-author
    : param bool strip_quotes: drop lines starting with ">"
    """

    selected = []
    for message in store.messages:
        if scope == SINGLE_AUTHOR:
            if message.author != author:
                continue
        elif scope != GENERAL:
            if message.author not in partition.labels:
                raise PartitionMismatch(message.author)
            if partition.label(message.author) != scope:
                continue
        body = strip_quoted(message.body) if strip_quotes else message.body
        selected.append((message.author, body))
    return Corpus(messages=tuple(selected), scope=scope)


def _require(corpus):
    if len(corpus) == 0:
        raise EmptyCorpus()


def _ratio(part, whole, name, degenerate):
    if whole == 0:
        degenerate.add(name)
        logger.debug("degenerate denominator for %s", name)
        return 0.0
    return 100.0 * part / whole


def _classifier(lex):
    cache = {}

    def classify(token):
        if token not in cache:
            cache[token] = classify_token(lex, token)
        return cache[token]
    return classify


def char_metrics(corpus):
    _require(corpus)
    counts = Counter()
    for body in corpus.bodies():
        for c in body:
            counts["char"] += 1
            if c.isspace():
                counts["space"] += 1
                continue
            category = unicodedata.category(c)
            if category.startswith("P"):
                counts["punct"] += 1
            elif category == "Nd":
                counts["digit"] += 1
            elif c.isalpha():
                counts["letter"] += 1
                if c.lower() in VOWELS:
                    counts["vowel"] += 1
                if c.isupper():
                    counts["upper"] += 1
            else:
                counts["other"] += 1

    degenerate = set()
    nonspace = counts["char"] - counts["space"]
    return CharMetrics(
        n_chars=counts["char"],
        pct_space_of_char=_ratio(counts["space"], counts["char"], "pct_space_of_char", degenerate),
        pct_punct_of_nonspace=_ratio(counts["punct"], nonspace, "pct_punct_of_nonspace", degenerate),
        pct_digit_of_nonspace=_ratio(counts["digit"], nonspace, "pct_digit_of_nonspace", degenerate),
        pct_letter_of_nonspace=_ratio(counts["letter"], nonspace, "pct_letter_of_nonspace", degenerate),
        pct_other_of_nonspace=_ratio(counts["other"], nonspace, "pct_other_of_nonspace", degenerate),
        pct_vowel_of_letters=_ratio(counts["vowel"], counts["letter"], "pct_vowel_of_letters", degenerate),
        pct_upper_of_letters=_ratio(counts["upper"], counts["letter"], "pct_upper_of_letters", degenerate),
        degenerate=frozenset(degenerate)
    )


def token_metrics(corpus, lex):
    """
    Token, known-word, stopword and synset ratios with the denominators of their
    printed headers. A known word (kw) is a word token found in the wordlist.
    """

    _require(corpus)
    classify = _classifier(lex)
    tokens = FreqDist()
    known = FreqDist()
    counts = Counter()
    nonspace = 0
    for body in corpus.bodies():
        nonspace += sum(1 for c in body if not c.isspace())
        for token in tokenize(body):
            tokens[token] += 1
            flags = classify(token)
            if flags.is_punct:
                counts["punct"] += 1
                continue
            if flags.is_contraction:
                counts["contraction"] += 1
            if not flags.is_word:
                continue
            if not flags.is_known:
                if flags.is_stopword:
                    counts["ukwsw"] += 1
                continue
            known[normal_form(token)] += 1
            if flags.has_synset:
                counts["kwss"] += 1
            if flags.is_stopword:
                counts["kwsw"] += 1
                counts["kwsw_ss" if flags.has_synset else "kwsw_nss"] += 1
            else:
                counts["kwnsw_ss" if flags.has_synset else "kwnsw_nss"] += 1

    degenerate = set()
    n_tokens = tokens.N()
    kw = known.N()

    def of_kw(part, name):
        return _ratio(part, kw, name, degenerate)

    chars_per_token = nonspace / n_tokens if n_tokens else 0.0
    if not n_tokens:
        degenerate.add("chars_per_token")

    return TokenMetrics(
        n_tokens=n_tokens,
        chars_per_token=chars_per_token,
        token_diversity=_ratio(tokens.B(), n_tokens, "token_diversity", degenerate),
        pct_punct_tokens=_ratio(counts["punct"], n_tokens, "pct_punct_tokens", degenerate),
        pct_known_of_nonpunct=_ratio(kw, n_tokens - counts["punct"], "pct_known_of_nonpunct", degenerate),
        lexical_diversity=of_kw(known.B(), "lexical_diversity"),
        pct_kwss_of_kw=of_kw(counts["kwss"], "pct_kwss_of_kw"),
        pct_kwsw_of_kw=of_kw(counts["kwsw"], "pct_kwsw_of_kw"),
        pct_ukwsw_of_kw=of_kw(counts["ukwsw"], "pct_ukwsw_of_kw"),
        pct_kw_sw_with_synset_of_kw=of_kw(counts["kwsw_ss"], "pct_kw_sw_with_synset_of_kw"),
        pct_sw_without_synset_of_kw=of_kw(counts["kwsw_nss"], "pct_sw_without_synset_of_kw"),
        pct_contractions_of_kw=of_kw(counts["contraction"], "pct_contractions_of_kw"),
        pct_kw_nonsw_nosynset_of_kw=of_kw(counts["kwnsw_nss"], "pct_kw_nonsw_nosynset_of_kw"),
        pct_kw_nonsw_synset_of_kw=of_kw(counts["kwnsw_ss"], "pct_kw_nonsw_synset_of_kw"),
        n_distinct_tokens=tokens.B(),
        n_contractions=counts["contraction"],
        degenerate=frozenset(degenerate)
    )


def word_class_members(flags, word_class):
    """
    Whether a word token with the given flags belongs to a size/histogram class.
    """

    kw = flags.is_word and flags.is_known
    if word_class == "kw":
        return kw
    if word_class == "kwss":
        return kw and flags.has_synset
    if word_class == "sw":
        return flags.is_word and flags.is_stopword
    if word_class == "nsssw":
        return flags.is_word and flags.is_stopword and not flags.has_synset
    if word_class == "kw-nonsw":
        return kw and not flags.is_stopword
    if word_class == "kw-nonsw-nosynset":
        return kw and not flags.is_stopword and not flags.has_synset
    if word_class == "kw-nosynset":
        return kw and not flags.has_synset
    if word_class == "kw-nonsw-synset":
        return kw and not flags.is_stopword and flags.has_synset
    raise ValueError("unknown word class {}".format(word_class))


def class_words(corpus, lex, word_class):
    """
    Occurrences of the class in corpus order, as lowercase forms.
    """

    classify = _classifier(lex)
    words = []
    for body in corpus.bodies():
        for token in tokenize(body):
            if word_class_members(classify(token), word_class):
                words.append(normal_form(token))
    return words


def _size_stats(words):
    if not words:
        return None
    distinct = sorted(set(words))
    mean, std = mean_std([len(w) for w in words])
    distinct_mean, distinct_std = mean_std([len(w) for w in distinct])
    return SizeStats(
        mean=mean,
        std=std,
        distinct_mean=distinct_mean,
        distinct_std=distinct_std,
        n=len(words),
        n_distinct=len(distinct)
    )


def word_size_metrics(corpus, lex):
    """
    Sizes in characters per word class, over every occurrence and over distinct forms.
    A class without words is None.
    """

    _require(corpus)
    values = {}
    for field, word_class in SIZE_CLASSES:
        values[field] = _size_stats(class_words(corpus, lex, word_class))
        if values[field] is None:
            logger.debug("no words of class %s in %s corpus", word_class, corpus.scope)
    return SizeMetrics(**values)


def sentence_metrics(corpus, lex):
    _require(corpus)
    classify = _classifier(lex)
    chars, tokens, kws, kwssnsw = [], [], [], []
    for body in corpus.bodies():
        for sentence in split_sentences(body):
            sentence_tokens = tokenize(sentence)
            flags = [classify(t) for t in sentence_tokens]
            chars.append(len(sentence))
            tokens.append(len(sentence_tokens))
            kws.append(sum(1 for f in flags if f.is_word and f.is_known))
            kwssnsw.append(sum(1 for f in flags if word_class_members(f, "kw-nonsw-synset")))

    degenerate = frozenset() if chars else frozenset(f for f, _ in SENTENCE_ROWS if f != "n_sents")
    chars_mean, chars_std = mean_std(chars)
    tokens_mean, tokens_std = mean_std(tokens)
    kw_mean, kw_std = mean_std(kws)
    kwssnsw_mean, kwssnsw_std = mean_std(kwssnsw)
    return SentenceMetrics(
        n_sents=len(chars),
        chars_per_sent_mean=chars_mean,
        chars_per_sent_std=chars_std,
        tokens_per_sent_mean=tokens_mean,
        tokens_per_sent_std=tokens_std,
        kw_per_sent_mean=kw_mean,
        kw_per_sent_std=kw_std,
        kwssnsw_per_sent_mean=kwssnsw_mean,
        kwssnsw_per_sent_std=kwssnsw_std,
        degenerate=degenerate
    )


def message_metrics(corpus):
    _require(corpus)
    bodies = corpus.bodies()
    chars_mean, chars_std = mean_std([len(b) for b in bodies])
    tokens_mean, tokens_std = mean_std([len(tokenize(b)) for b in bodies])
    sents_mean, sents_std = mean_std([len(split_sentences(b)) for b in bodies])
    return MessageMetrics(
        chars_per_msg_mean=chars_mean,
        chars_per_msg_std=chars_std,
        tokens_per_msg_mean=tokens_mean,
        tokens_per_msg_std=tokens_std,
        sents_per_msg_mean=sents_mean,
        sents_per_msg_std=sents_std
    )


def pos_metrics(corpus, lex):
    """
    Incidence of each Brown tag over non-punctuation tokens, plus group subtotals.
    """

    _require(corpus)
    counts = FreqDist()
    for body in corpus.bodies():
        for sentence in split_sentences(body):
            tokens = tokenize(sentence)
            if not tokens:
                continue
            for tag in pos_tag(lex, tokens):
                if tag != PUNCT_TAG:
                    counts[tag] += 1

    n_tagged = counts.N()
    if n_tagged == 0:
        logger.debug("no taggable tokens in %s corpus", corpus.scope)

    def pct(count):
        return 100.0 * count / n_tagged if n_tagged else 0.0

    tracked = set()
    groups = {}
    for group, members in TAG_GROUPS:
        tracked.update(members)
        groups[group] = pct(sum(counts[t] for t in members))
    all_tags = sorted(tracked | set(counts))
    return PosMetrics(
        tags={tag: pct(counts[tag]) for tag in all_tags},
        groups=groups,
        untracked=pct(sum(c for t, c in counts.items() if t not in tracked)),
        n_tagged=n_tagged,
        degenerate=n_tagged == 0
    )


def compute_bundle(corpus, lex):
    return MetricBundle(
        scope=corpus.scope,
        char=char_metrics(corpus),
        token=token_metrics(corpus, lex),
        size=word_size_metrics(corpus, lex),
        sentence=sentence_metrics(corpus, lex),
        message=message_metrics(corpus),
        pos=pos_metrics(corpus, lex)
    )


def _size_value(stats, attr):
    return math.nan if stats is None else getattr(stats, attr)


def _flagged(source, name):
    value = getattr(source, name)
    return math.nan if name in source.degenerate else value


def textual_features(bundle, n_msgs):
    """
    Textual feature values of one corpus, NaN where a denominator was degenerate or a
    class was empty. Keys follow TEXTUAL_FEATURES.
    """

    char, token, size, sentence, message, pos = (
        bundle.char, bundle.token, bundle.size, bundle.sentence, bundle.message, bundle.pos
    )

    def pos_value(value):
        return math.nan if pos.degenerate else value

    values = {
        "n_msgs": n_msgs,
        "n_chars": char.n_chars,
        "n_tokens": token.n_tokens,
        "n_distinct_tokens": token.n_distinct_tokens,
        "n_sents": sentence.n_sents,
        "n_contractions": token.n_contractions,
        "mean_skw": _size_value(size.skw, "mean"),
        "mean_distinct_skw": _size_value(size.skw, "distinct_mean"),
        "mean_ssw": _size_value(size.ssw, "mean"),
        "mean_distinct_ssw": _size_value(size.ssw, "distinct_mean"),
        "mean_chars_per_sent": _flagged(sentence, "chars_per_sent_mean"),
        "mean_tokens_per_sent": _flagged(sentence, "tokens_per_sent_mean"),
        "mean_kw_per_sent": _flagged(sentence, "kw_per_sent_mean"),
        "mean_chars_per_msg": message.chars_per_msg_mean,
        "mean_tokens_per_msg": message.tokens_per_msg_mean,
        "mean_sents_per_msg": message.sents_per_msg_mean,
        "pos_nouns": pos_value(pos.groups["nouns"]),
        "pos_adjectives": pos_value(sum(pos.tags[t] for t in ADJECTIVE_TAGS)),
        "pos_modifiers": pos_value(pos.groups["modifiers"]),
        "pos_verbs": pos_value(pos.groups["verbs"]),
        "pos_function": pos_value(pos.groups["function"]),
        "pos_other": pos_value(pos.groups["other"]),
    }
    for name in ("pct_space_of_char", "pct_punct_of_nonspace", "pct_digit_of_nonspace",
                 "pct_letter_of_nonspace", "pct_vowel_of_letters", "pct_upper_of_letters"):
        values[name] = _flagged(char, name)
    for name in ("chars_per_token", "token_diversity", "pct_punct_tokens", "pct_known_of_nonpunct",
                 "lexical_diversity", "pct_kwss_of_kw", "pct_kwsw_of_kw", "pct_contractions_of_kw"):
        values[name] = _flagged(token, name)
    return values


def author_features(store, partition, net_metrics, lex, strip_quotes=True):
    """
    One row per author (sorted by id): topological metrics, the sector index
    (periphery 0, intermediary 1, hub 2) and the textual features of the author's own
    messages. Columns follow FEATURE_COLUMNS.

    : param MessageStore store: messages of one list
    : param SectorPartition partition: sector labels of every author
    : param VertexMetrics net_metrics: topological metrics of every author
    : param Lexicon lex: linguistic resources
    """

    authors = store.authors()
    for author in authors:
        if author not in partition.labels or author not in net_metrics:
            raise PartitionMismatch(author)

    bodies = {author: [] for author in authors}
    for message in store.messages:
        bodies[message.author].append(
            (message.author, strip_quoted(message.body) if strip_quotes else message.body)
        )

    rows = []
    for author in authors:
        topo = net_metrics[author]
        row = [getattr(topo, name) for name in TOPOLOGICAL_FEATURES[:-1]]
        row.append(SECTOR_INDEX[partition.label(author)])
        corpus = Corpus(messages=tuple(bodies[author]), scope=SINGLE_AUTHOR)
        textual = textual_features(compute_bundle(corpus, lex), len(corpus))
        row.extend(textual[name] for name in TEXTUAL_FEATURES)
        rows.append(row)

    values = np.array(rows, dtype=float).reshape(len(authors), len(FEATURE_COLUMNS))
    return FeatureMatrix(authors=tuple(authors), columns=FEATURE_COLUMNS, values=values)
