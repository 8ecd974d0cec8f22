import os

PACKAGE_NAME = "textnet"
DATA_DIR = os.path.join(os.path.dirname(os.path.abspath(__file__)), "data")
CONTRACTIONS_LIST = os.path.join(DATA_DIR, "contractions.txt")
LEXICON_HOME_ENV = "TEXTNET_LEXICON_HOME"
LEXICON_HOME = os.environ.get(LEXICON_HOME_ENV) or os.path.join(os.path.expanduser("~"), ".textnet", "lexicon")
DEFAULT_MANIFEST = os.path.join(LEXICON_HOME, "manifest.json")
LOGLEVEL_ENV = "TEXTNET_LOGLEVEL"

EXIT_OK = 0
EXIT_CONFIG = 2
EXIT_RESOURCE = 3
EXIT_COMPUTATION = 4

FAILED_MARKER = "FAILED"
RUN_MANIFEST = "manifest.json"

DEFAULTS = {
    "limit": 20000,
    "f_hub": 0.05,
    "f_intermediary": 0.15,
    "strip_quotes": True,
    "pca_mode": "correlation",
    "seed": 0,
    "workers": 1,
    "direction": "information",
    "out": "textnet-output",
    "lexicon": DEFAULT_MANIFEST,
    "components": 5,
    "loading_threshold": 0.05,
}

INFORMATION = "information"
STATUS = "status"

HUB = "hub"
INTERMEDIARY = "intermediary"
PERIPHERY = "periphery"
GENERAL = "general"
SINGLE_AUTHOR = "single-author"
SECTORS = (PERIPHERY, INTERMEDIARY, HUB)
SCOPES = (GENERAL, PERIPHERY, INTERMEDIARY, HUB)
SECTOR_INDEX = {PERIPHERY: 0, INTERMEDIARY: 1, HUB: 2}
SCOPE_COLUMNS = {GENERAL: "g.", PERIPHERY: "p.", INTERMEDIARY: "i.", HUB: "h."}

# (alpha, c(alpha)) of the two-sample Kolmogorov-Smirnov test
C_ALPHA = (
    (0.1, 1.22),
    (0.05, 1.36),
    (0.025, 1.48),
    (0.01, 1.63),
    (0.005, 1.73),
    (0.001, 1.95),
)
KS_REFERENCE_THRESHOLD = 1.7

# Intra-list sector pairs (first, second) and the inter-list row order
KS_SECTOR_PAIRS = (("H-P", HUB, PERIPHERY), ("H-I", HUB, INTERMEDIARY), ("I-P", INTERMEDIARY, PERIPHERY))
KS_INTER_ROWS = (("P", PERIPHERY), ("I", INTERMEDIARY), ("H", HUB))
KS_MEASURES = (
    ("substantives", "pos_nouns"),
    ("adjectives", "pos_adjectives"),
    ("stopwords", "pct_kwsw_of_kw"),
    ("punctuations", "pct_punct_of_nonspace"),
)

VOWELS = frozenset("aeiou")
PUNCT_TAG = "."
DEFAULT_TAG = "NN"
TAG_GROUPS = (
    ("nouns", ("NN", "NNS", "NNP", "NNPS")),
    ("modifiers", ("JJ", "JJR", "JJS", "RB", "RBR", "RBS", "RP")),
    ("verbs", ("VB", "VBZ", "VBP", "VBN", "VBD", "VBG", "MD")),
    ("function", ("IN", "DT", "PRP", "PRP$", "PDT", "TO", "CC", "WRB", "WDT", "WP", "WP$")),
    ("other", ("CD", "EX", "UH", "FW")),
)
ADJECTIVE_TAGS = ("JJ", "JJR", "JJS")

MAX_WORD_LENGTH = 30
WORD_CLASSES = ("kw", "kw-nonsw", "sw", "kw-nonsw-nosynset", "kw-nosynset", "kw-nonsw-synset")

WORDNET_INDEX_FILES = ("index.noun", "index.verb", "index.adj", "index.adv")
LEXICON_RESOURCES = ("wordlist", "stopwords", "wordnet", "contractions", "tag_lexicon")
LEXICON_FILES = {
    "wordlist": "words.txt",
    "stopwords": "stopwords.txt",
    "wordnet": "wordnet",
    "contractions": "contractions.txt",
    "tag_lexicon": "tag_lexicon.tsv",
}
GOLD_FILE = "gold_tagged.txt"
NLTK_CORPORA = ("words", "stopwords", "wordnet", "brown")

# Every HELDOUT_EVERY-th Brown sentence is kept out of the tag lexicon; the gold
# sample is drawn from those until it holds GOLD_TOKENS non-punctuation tokens
HELDOUT_EVERY = 10
GOLD_TOKENS = 500
MIN_TAG_ACCURACY = 0.80

BROWN_PUNCT_TAGS = frozenset((".", ",", ":", "(", ")", "--", "'", "''", "``"))
# Brown base tags (suffixes -TL -HL -NC, negation * and contracted +parts removed)
BROWN_TAG_MAP = {
    "NN": "NN", "NN$": "NN", "NNS": "NNS", "NNS$": "NNS",
    "NP": "NNP", "NP$": "NNP", "NPS": "NNPS", "NPS$": "NNPS", "NR": "NN", "NR$": "NN", "NRS": "NNS",
    "PN": "NN", "PN$": "NN",
    "JJ": "JJ", "JJ$": "JJ", "JJR": "JJR", "JJS": "JJS", "JJT": "JJS", "AP": "JJ", "AP$": "JJ", "OD": "JJ",
    "RB": "RB", "RB$": "RB", "RBR": "RBR", "RBT": "RBS", "RN": "RB", "RP": "RP", "QL": "RB", "QLP": "RB",
    "VB": "VB", "VBD": "VBD", "VBG": "VBG", "VBN": "VBN", "VBZ": "VBZ",
    "BE": "VB", "BED": "VBD", "BEDZ": "VBD", "BEG": "VBG", "BEM": "VBP", "BEN": "VBN", "BER": "VBP", "BEZ": "VBZ",
    "HV": "VB", "HVD": "VBD", "HVG": "VBG", "HVN": "VBN", "HVZ": "VBZ",
    "DO": "VB", "DOD": "VBD", "DOZ": "VBZ", "MD": "MD",
    "IN": "IN", "CS": "IN", "CC": "CC", "TO": "TO",
    "AT": "DT", "DT": "DT", "DTI": "DT", "DTS": "DT", "DTX": "DT", "ABL": "PDT", "ABN": "PDT", "ABX": "PDT",
    "PPS": "PRP", "PPSS": "PRP", "PPO": "PRP", "PPL": "PRP", "PPLS": "PRP", "PP$": "PRP$", "PP$$": "PRP$",
    "WDT": "WDT", "WPS": "WP", "WPO": "WP", "WP$": "WP$", "WRB": "WRB", "WQL": "WRB",
    "CD": "CD", "CD$": "CD", "EX": "EX", "UH": "UH",
}
# (suffix, tag) rules for words missing from the tag lexicon, longest first
SUFFIX_RULES = (
    ("ness", "NN"), ("ment", "NN"), ("tion", "NN"), ("sion", "NN"), ("able", "JJ"), ("ible", "JJ"),
    ("ing", "VBG"), ("ity", "NN"), ("ous", "JJ"), ("ful", "JJ"), ("ive", "JJ"), ("est", "JJS"), ("ers", "NNS"),
    ("ed", "VBD"), ("ly", "RB"), ("al", "JJ"), ("er", "NN"), ("ss", "NN"), ("s", "NNS"),
)

TOPOLOGICAL_FEATURES = ("d", "d_i", "d_o", "s", "s_i", "s_o", "bc", "tri", "cc", "sector")
TEXTUAL_FEATURES = (
    "n_msgs", "n_chars", "n_tokens", "n_distinct_tokens", "n_sents", "n_contractions",
    "pct_space_of_char", "pct_punct_of_nonspace", "pct_digit_of_nonspace",
    "pct_letter_of_nonspace", "pct_vowel_of_letters", "pct_upper_of_letters",
    "chars_per_token", "token_diversity", "pct_punct_tokens", "pct_known_of_nonpunct",
    "lexical_diversity", "pct_kwss_of_kw", "pct_kwsw_of_kw", "pct_contractions_of_kw",
    "mean_skw", "mean_distinct_skw", "mean_ssw", "mean_distinct_ssw",
    "mean_chars_per_sent", "mean_tokens_per_sent", "mean_kw_per_sent",
    "mean_chars_per_msg", "mean_tokens_per_msg", "mean_sents_per_msg",
    "pos_nouns", "pos_adjectives", "pos_modifiers", "pos_verbs", "pos_function", "pos_other",
)
FEATURE_COLUMNS = TOPOLOGICAL_FEATURES + TEXTUAL_FEATURES
PCA_FEATURES = tuple(f for f in FEATURE_COLUMNS if f != "sector")

TOPOLOGICAL_CORRELATION = ("d", "d_i", "d_o", "s", "s_i", "s_o", "bc", "tri")
TEXTUAL_CORRELATION = (
    "n_chars", "n_tokens", "n_distinct_tokens", "n_sents", "lexical_diversity",
    "mean_skw", "mean_distinct_skw", "mean_ssw", "mean_chars_per_sent",
    "mean_tokens_per_sent", "mean_chars_per_msg", "mean_tokens_per_msg",
)
MIXED_TEXTUAL = ("n_contractions", "n_chars", "n_tokens", "n_distinct_tokens", "pos_nouns", "pos_adjectives")

# Row labels of the printed tables, in print order
SUMMARY_ROWS = (
    ("date_first", "date_1"),
    ("date_last", "date_M"),
    ("n_participants", "N"),
    ("pct_participants", "N_%"),
    ("n_messages", "M"),
    ("pct_messages", "M_%"),
    ("n_threads", "Γ"),
    ("pct_threads", "Γ_%"),
    ("n_dangling", "-M"),
    ("span_years", "Δ_Y"),
)
CHAR_ROWS = (
    ("n_chars", "n chars"),
    ("pct_space_of_char", "100 |space|/|char|"),
    ("pct_punct_of_nonspace", "100 |punct|/(|char|-|space|)"),
    ("pct_digit_of_nonspace", "100 |digit|/(|char|-|space|)"),
    ("pct_letter_of_nonspace", "100 |letter|/(|char|-|space|)"),
    ("pct_other_of_nonspace", "100 |other|/(|char|-|space|)"),
    ("pct_vowel_of_letters", "100 |vogal|/|letter|"),
    ("pct_upper_of_letters", "100 |Uppercase|/|letter|"),
)
TOKEN_ROWS = (
    ("n_tokens", "|tokens|"),
    ("chars_per_token", "(|chars|-|spaces|)/|tokens|"),
    ("token_diversity", "100 |tokens≠|/|tokens|"),
    ("pct_punct_tokens", "100 |punct|/|tokens|"),
    ("pct_known_of_nonpunct", "100 |known words=kw|/(|tokens|-|punct|)"),
    ("lexical_diversity", "100 |kw≠|/kw"),
    ("pct_kwss_of_kw", "100 |kw with wordnet synset=kwss|/|kw|"),
    ("pct_kwsw_of_kw", "100 |kw that are stopwords=kwsw|/|kw|"),
    ("pct_ukwsw_of_kw", "100 |unknown words that are sw=ukwsw|/|kw|"),
    ("pct_kw_sw_with_synset_of_kw", "100 |kw that are stopwords and have synsets|/|kw|"),
    ("pct_sw_without_synset_of_kw", "100 |stopwords without synsets|/|kw|"),
    ("pct_contractions_of_kw", "100 |contractions|/|kw|"),
    ("pct_kw_nonsw_nosynset_of_kw", "100 |kw not stopwords no synset|/|kw|"),
    ("pct_kw_nonsw_synset_of_kw", "100 |kw not stopword has synset|/|kw|"),
)
SIZE_CLASSES = (
    ("skw", "kw"),
    ("skwss", "kwss"),
    ("ssw", "sw"),
    ("snsssw", "nsssw"),
    ("skwnsw_nss", "kw-nonsw-nosynset"),
)
SENTENCE_ROWS = (
    ("n_sents", "|sents|"),
    ("chars_per_sent_mean", "μ(chars/sent)"),
    ("chars_per_sent_std", "σ(chars/sent)"),
    ("tokens_per_sent_mean", "μ(tokens/sent)"),
    ("tokens_per_sent_std", "σ(tokens/sent)"),
    ("kw_per_sent_mean", "μ(kw/sent)"),
    ("kw_per_sent_std", "σ(kw/sent)"),
    ("kwssnsw_per_sent_mean", "μ(kwssnsw/sent)"),
    ("kwssnsw_per_sent_std", "σ(kwssnsw/sent)"),
)
MESSAGE_ROWS = (
    ("chars_per_msg_mean", "μ(|chars|/msg)"),
    ("chars_per_msg_std", "σ(|chars|/msg)"),
    ("tokens_per_msg_mean", "μ(|tokens|/msg)"),
    ("tokens_per_msg_std", "σ(|tokens|/msg)"),
    ("sents_per_msg_mean", "μ(|sents|/msg)"),
    ("sents_per_msg_std", "σ(|sents|/msg)"),
)
