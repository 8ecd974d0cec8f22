"""
Word-size histograms over every occurrence (incident) and over distinct forms
(existent), and the differences between the two.
"""

import logging
from collections import Counter

from textnet.constants import *
from textnet.exceptions import EmptyClass, NormalizationMismatch
from textnet.models import HistDiffResult, SizeHistogram
from textnet.textmetrics import class_words

logger = logging.getLogger(__name__)

INCIDENT = "incident"
EXISTENT = "existent"


def _normalized(lengths, normalization, word_class):
    counts = Counter(min(length, MAX_WORD_LENGTH) for length in lengths)
    total = sum(counts.values())
    return SizeHistogram(
        masses={length: count / total for length, count in sorted(counts.items())},
        normalization=normalization,
        word_class=word_class
    )


def histograms_from_words(words, word_class="kw"):
    if not words:
        raise EmptyClass(word_class)
    incident = _normalized([len(w) for w in words], INCIDENT, word_class)
    existent = _normalized([len(w) for w in set(words)], EXISTENT, word_class)
    return incident, existent


def build_histograms(corpus, lex, word_class="kw"):
    """
    Incident and existent size histograms of one word class, both summing to 1.
    Lengths above the tracked maximum share the last bin.

    : param Corpus corpus: texts of one scope
    : param Lexicon lex: linguistic resources
    : param str word_class: one of WORD_CLASSES
    """

    return histograms_from_words(class_words(corpus, lex, word_class), word_class)


def _diffs(pair):
    incident, existent = pair
    lengths = sorted(set(incident.masses) | set(existent.masses))
    return [(length, incident.mass(length) - existent.mass(length)) for length in lengths]


def _total(histogram):
    return sum(histogram.masses.values())


def cumulative_positive_difference(pair):
    """
    Sum of the positive parts of incident - existent, and the L1 distance of the two.
    """

    incident, existent = pair
    if incident.masses and existent.masses and abs(_total(incident) - _total(existent)) > 1e-9:
        raise NormalizationMismatch()
    diffs = _diffs(pair)
    return HistDiffResult(
        positive_diff=sum(max(0.0, d) for _, d in diffs),
        l1_diff=sum(abs(d) for _, d in diffs),
        word_class=incident.word_class
    )


def crossing_length(pair):
    """
    Smallest length where incident - existent turns from positive to non-positive,
    or None.
    """

    incident, existent = pair
    previous = None
    for length in range(1, MAX_WORD_LENGTH + 1):
        diff = incident.mass(length) - existent.mass(length)
        if previous is not None and previous > 0 and diff <= 0:
            return length
        previous = diff
    return None
