"""
Linguistic resources behind the textual measures: known words, stopwords, words with a
wordnet synset, contractions and the Brown tag lexicon with its suffix rules.
"""

import hashlib
import json
import logging
import os
import re
import unicodedata
from types import MappingProxyType

import nltk
from jsonschema import ValidationError, validate
from nltk.probability import ConditionalFreqDist
from nltk.tag import DefaultTagger, RegexpTagger, UnigramTagger

from textnet.constants import *
from textnet.exceptions import EmptySample, MalformedResource, MissingResource, ResourceHashMismatch
from textnet.models import Lexicon, TokenClass
from textnet.utils import sha256_file

logger = logging.getLogger(__name__)

APOSTROPHES = str.maketrans({"’": "'", "‘": "'"})


def normal_form(token):
    return token.translate(APOSTROPHES).lower()


def is_punctuation(token):
    return bool(token) and all(unicodedata.category(c).startswith("P") for c in token)


def is_word(token):
    return any(c.isalpha() for c in token) and not any(c.isdigit() for c in token)


def _read_lines(path):
    if not os.path.isfile(path):
        raise MissingResource(path)
    try:
        with open(path, encoding="utf-8") as handle:
            return handle.read().splitlines()
    except UnicodeDecodeError:
        raise MalformedResource(path, 0)


def _read_word_set(path):
    words = set()
    for line_no, line in enumerate(_read_lines(path), start=1):
        entry = line.strip()
        if not entry or entry.startswith("#"):
            continue
        if len(entry.split()) != 1:
            raise MalformedResource(path, line_no)
        words.add(normal_form(entry))
    return frozenset(words)


def _read_wordnet(directory):
    """
    Lemmas of the Princeton index files. License lines start with two spaces; every
    other line starts with the lemma followed by its part of speech.
    """

    if not os.path.isdir(directory):
        raise MissingResource(directory)
    lemmas = set()
    for name in WORDNET_INDEX_FILES:
        path = os.path.join(directory, name)
        for line_no, line in enumerate(_read_lines(path), start=1):
            if not line.strip() or line.startswith("  "):
                continue
            fields = line.split()
            if len(fields) < 2:
                raise MalformedResource(path, line_no)
            lemmas.add(normal_form(fields[0]))
    return frozenset(lemmas)


def _read_tag_lexicon(path):
    """
    Lines "word<TAB>TAG[,TAG...]" with the most frequent tag first. Entries whose word
    starts with "-" are suffix rules, tried in file order.
    """

    tags = {}
    rules = []
    for line_no, line in enumerate(_read_lines(path), start=1):
        if not line.strip() or line.startswith("#"):
            continue
        parts = line.split("\t")
        if len(parts) != 2 or not parts[0].strip():
            raise MalformedResource(path, line_no)
        word = normal_form(parts[0].strip())
        ranked = tuple(t.strip() for t in parts[1].split(",") if t.strip())
        if not ranked:
            raise MalformedResource(path, line_no)
        if word.startswith("-") and len(word) > 1:
            rules.append((word[1:], ranked[0]))
        else:
            tags.setdefault(word, ranked)
    return tags, tuple(rules)


def build_tagger(tag_lexicon, suffix_rules):
    """
    Backoff chain: most frequent lexicon tag, then the first matching suffix rule,
    then NN.
    """

    tagger = DefaultTagger(DEFAULT_TAG)
    if suffix_rules:
        patterns = [(r".*{}$".format(re.escape(suffix)), tag) for suffix, tag in suffix_rules]
        tagger = RegexpTagger(patterns, backoff=tagger)
    model = {word: ranked[0] for word, ranked in tag_lexicon.items()}
    return UnigramTagger(model=model, backoff=tagger)


def load_lexicon(paths, hashes=None):
    """
    Loads the five resources. Nothing is returned unless every resource loads.

    : param dict paths: resource name -> path (the wordnet entry is a directory)
    : param dict hashes: resource name -> sha256 recorded for the run manifest
    """

    for name in LEXICON_RESOURCES:
        if name not in paths:
            raise MissingResource(name)

    known_words = _read_word_set(paths["wordlist"])
    stopwords = _read_word_set(paths["stopwords"])
    synset_words = _read_wordnet(paths["wordnet"])
    contractions = _read_word_set(paths["contractions"])
    tag_lexicon, suffix_rules = _read_tag_lexicon(paths["tag_lexicon"])

    logger.info(
        "lexicon loaded: %d known words, %d stopwords, %d synset lemmas",
        len(known_words), len(stopwords), len(synset_words)
    )
    return Lexicon(
        known_words=known_words,
        stopwords=stopwords,
        synset_words=synset_words,
        contractions=contractions,
        tag_lexicon=MappingProxyType(tag_lexicon),
        suffix_rules=suffix_rules,
        hashes=MappingProxyType(dict(hashes or {})),
        tagger=build_tagger(tag_lexicon, suffix_rules)
    )


def resource_hash(path):
    """
    sha256 of a resource file. A directory hashes the concatenation of its index files.
    """

    if os.path.isdir(path):
        digest = hashlib.sha256()
        for name in WORDNET_INDEX_FILES:
            index = os.path.join(path, name)
            if not os.path.isfile(index):
                raise MissingResource(index)
            with open(index, "rb") as handle:
                digest.update(handle.read())
        return digest.hexdigest()
    return sha256_file(path)


def read_manifest(path):
    """
    Parses and validates a lexicon manifest, returning resource paths made absolute and
    the recorded hashes.
    """

    if not os.path.isfile(path):
        raise MissingResource(path)
    with open(path, encoding="utf-8") as handle:
        try:
            document = json.load(handle)
        except ValueError as e:
            raise MalformedResource(path, getattr(e, "lineno", 0))
    try:
        validate(document, Lexicon.get_manifest_schema())
    except ValidationError:
        raise MalformedResource(path, 0)

    base = os.path.dirname(os.path.abspath(path))
    paths = {}
    hashes = {}
    for name in LEXICON_RESOURCES:
        entry = document["resources"][name]
        paths[name] = os.path.normpath(os.path.join(base, entry["path"]))
        if "sha256" in entry:
            hashes[name] = entry["sha256"]
    return paths, hashes


def check_hashes(paths, hashes):
    """
    Names of the resources whose content differs from the manifest. Missing files are
    reported by load_lexicon instead.
    """

    mismatched = []
    for name, expected in sorted(hashes.items()):
        path = paths[name]
        if not os.path.exists(path):
            continue
        if resource_hash(path) != expected:
            mismatched.append(name)
    return mismatched


def load_manifest(path):
    paths, hashes = read_manifest(path)
    mismatched = check_hashes(paths, hashes)
    if mismatched:
        raise ResourceHashMismatch(paths[mismatched[0]])
    actual = {name: resource_hash(p) for name, p in paths.items() if os.path.exists(p)}
    return load_lexicon(paths, hashes=actual)


def classify_token(lex, token):
    if is_punctuation(token):
        return TokenClass(is_punct=True)
    form = normal_form(token)
    return TokenClass(
        is_punct=False,
        is_word=is_word(token),
        is_known=form in lex.known_words,
        is_stopword=form in lex.stopwords,
        has_synset=form in lex.synset_words,
        is_contraction=form in lex.contractions
    )


def pos_tag(lex, sentence):
    """
    One Brown tag per token; punctuation tokens get the punctuation tag.

    : param Lexicon lex: loaded resources
    : param list sentence: tokens
    """

    tagger = lex.tagger
    if tagger is None:
        tagger = build_tagger(lex.tag_lexicon, lex.suffix_rules)
    tagged = tagger.tag([normal_form(t) for t in sentence])
    return [
        PUNCT_TAG if is_punctuation(token) else tag
        for token, (_, tag) in zip(sentence, tagged)
    ]


def read_gold_sample(path):
    """
    Gold tagged sentences, one per line, tokens written as word/TAG.
    """

    sentences = []
    for line_no, line in enumerate(_read_lines(path), start=1):
        if not line.strip():
            continue
        pairs = []
        for item in line.split():
            word, sep, tag = item.rpartition("/")
            if not sep or not word:
                raise MalformedResource(path, line_no)
            pairs.append((word, tag))
        sentences.append(pairs)
    return sentences


def tag_accuracy(lex, sentences):
    """
    Share of non-punctuation gold tokens whose tag pos_tag reproduces.
    """

    correct = 0
    total = 0
    for pairs in sentences:
        predicted = pos_tag(lex, [w for w, _ in pairs])
        for (word, gold), tag in zip(pairs, predicted):
            if is_punctuation(word):
                continue
            total += 1
            correct += gold == tag
    return correct / total if total else 0.0


def _nltk_corpus(name):
    """
    The nltk corpus reader for name, downloading the corpus into the nltk data path
    when it isn't there yet.
    """

    try:
        nltk.data.find("corpora/{}".format(name))
    except LookupError:
        logger.info("downloading nltk corpus %s", name)
        if not nltk.download(name, quiet=True):
            raise MissingResource("nltk:{}".format(name))
    return getattr(nltk.corpus, name)


def _wordnet_index_files():
    _nltk_corpus("wordnet")
    files = {}
    for name in WORDNET_INDEX_FILES:
        pointer = nltk.data.find("corpora/wordnet/{}".format(name))
        stream = pointer.open()
        try:
            files[name] = stream.read()
        finally:
            stream.close()
    return files


def brown_tag(tag):
    """
    Maps a Brown corpus tag onto the tag set of the tag lexicon, or None when it
    has no counterpart there.
    """

    if tag.startswith("FW-"):
        return "FW"
    base = tag.split("+")[0]
    if base.startswith("--"):
        return PUNCT_TAG
    base = base.split("-")[0]
    if base == "*":
        return "RB"
    base = base.rstrip("*")
    if base in BROWN_PUNCT_TAGS:
        return PUNCT_TAG
    return BROWN_TAG_MAP.get(base)


def split_heldout(tagged_sents, every=HELDOUT_EVERY):
    """
    Splits tagged sentences into a training part and a held-out part (every n-th
    sentence, starting with the first).
    """

    training = []
    heldout = []
    for index, sentence in enumerate(tagged_sents):
        (heldout if index % every == 0 else training).append(sentence)
    return training, heldout


def tag_frequencies(tagged_sents):
    """
    ConditionalFreqDist of mapped tags per normalized word form. Punctuation and
    unmapped tags are left out.
    """

    frequencies = ConditionalFreqDist()
    for sentence in tagged_sents:
        for word, tag in sentence:
            mapped = brown_tag(tag)
            if mapped is None or mapped == PUNCT_TAG or is_punctuation(word):
                continue
            frequencies[normal_form(word)][mapped] += 1
    return frequencies


def gold_sentences(heldout, n_tokens=GOLD_TOKENS):
    """
    Held-out sentences with mapped tags, taken in order until they hold n_tokens
    non-punctuation tokens. Sentences with an unmapped tag are skipped.
    """

    sentences = []
    total = 0
    for sentence in heldout:
        if total >= n_tokens:
            break
        pairs = [(word, brown_tag(tag)) for word, tag in sentence]
        if not pairs or any(tag is None or not word.strip() for word, tag in pairs):
            continue
        sentences.append(pairs)
        total += sum(1 for word, _ in pairs if not is_punctuation(word))
    if total < n_tokens:
        raise EmptySample("Held-out sentences hold {} tokens, {} are needed.".format(total, n_tokens))
    return sentences


def _write_text(path, lines):
    with open(path, "w", encoding="utf-8", newline="\n") as handle:
        for line in lines:
            handle.write(line)
            handle.write("\n")


def _lexicon_entry(word):
    return bool(word) and not word.startswith(("-", "#")) and len(word.split()) == 1


def build_lexicon(directory, words=None, stopwords=None, wordnet=None, tagged_sents=None,
                  contractions=CONTRACTIONS_LIST, heldout_every=HELDOUT_EVERY, gold_tokens=GOLD_TOKENS):
    """
    Writes the five lexicon resources, a held-out gold sample and the manifest with
    their hashes into directory. Every source left out is read from the nltk corpora.

    : param str directory: target directory, created when missing
    : param iterable words: known word forms (nltk words)
    : param iterable stopwords: stopwords (nltk stopwords, English)
    : param dict wordnet: index file name -> content bytes (nltk wordnet)
    : param iterable tagged_sents: Brown tagged sentences (nltk brown)
    : param str contractions: path of the contractions list to copy
    : return: path of the written manifest
    """

    if words is None:
        words = _nltk_corpus("words").words()
    if stopwords is None:
        stopwords = _nltk_corpus("stopwords").words("english")
    if wordnet is None:
        wordnet = _wordnet_index_files()
    if tagged_sents is None:
        tagged_sents = _nltk_corpus("brown").tagged_sents()

    os.makedirs(os.path.join(directory, LEXICON_FILES["wordnet"]), exist_ok=True)
    path_of = {name: os.path.join(directory, LEXICON_FILES[name]) for name in LEXICON_RESOURCES}

    _write_text(path_of["wordlist"], sorted({normal_form(w) for w in words if _lexicon_entry(w)}))
    _write_text(path_of["stopwords"], sorted({normal_form(w) for w in stopwords if _lexicon_entry(w)}))
    for name in WORDNET_INDEX_FILES:
        if name not in wordnet:
            raise MissingResource("nltk:wordnet/{}".format(name))
        with open(os.path.join(path_of["wordnet"], name), "wb") as handle:
            handle.write(wordnet[name])
    _write_text(path_of["contractions"], _read_lines(contractions))

    training, heldout = split_heldout(tagged_sents, heldout_every)
    frequencies = tag_frequencies(training)
    entries = []
    for word in sorted(frequencies.conditions()):
        if not _lexicon_entry(word):
            continue
        ranked = sorted(frequencies[word].items(), key=lambda item: (-item[1], item[0]))
        entries.append("{}\t{}".format(word, ",".join(tag for tag, _ in ranked)))
    entries.extend("-{}\t{}".format(suffix, tag) for suffix, tag in SUFFIX_RULES)
    _write_text(path_of["tag_lexicon"], entries)

    gold_path = os.path.join(directory, GOLD_FILE)
    gold = gold_sentences(heldout, gold_tokens)
    _write_text(gold_path, (" ".join("{}/{}".format(w, t) for w, t in pairs) for pairs in gold))

    document = {
        "resources": {
            name: {"path": LEXICON_FILES[name], "sha256": resource_hash(path_of[name])}
            for name in LEXICON_RESOURCES
        },
        "gold": {"path": GOLD_FILE, "sha256": sha256_file(gold_path), "heldout_every": heldout_every},
        "sources": {"nltk": nltk.__version__, "corpora": list(NLTK_CORPORA)},
    }
    manifest = os.path.join(directory, "manifest.json")
    with open(manifest, "w", encoding="utf-8", newline="\n") as handle:
        json.dump(document, handle, indent=2, sort_keys=True)
        handle.write("\n")
    logger.info("lexicon built in %s: %d tag entries, %d gold sentences", directory, len(entries), len(gold))
    return manifest
