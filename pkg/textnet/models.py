"""
Value types shared by every stage of the analysis. All of them are immutable once built;
collections are stored as tuples, frozensets or read-only mapping proxies.
"""

from dataclasses import dataclass, field
from datetime import datetime, timezone
from types import MappingProxyType
from typing import Mapping, Optional, Tuple

import networkx as nx

from textnet.constants import INFORMATION, SECTORS, STATUS


def _frozen(mapping):
    return MappingProxyType(dict(mapping))


@dataclass(frozen=True)
class RawMessage:
    """
    One archive entry. "author" is the normalized (lowercase, bare) email address and
    "sent_at" is always timezone-aware UTC. "body" may be empty but is never None.
    """

    message_id: str
    in_reply_to: Optional[str]
    author: str
    sent_at: datetime
    body: str = ""

    def to_record(self):
        return {
            "id": self.message_id,
            "in_reply_to": self.in_reply_to,
            "author": self.author,
            "date": self.sent_at.astimezone(timezone.utc).isoformat(),
            "body": self.body
        }

    @staticmethod
    def get_schema():
        schema = {
            "type": "object",
            "required": ["id", "in_reply_to", "author", "date", "body"]
        }
        props = schema["properties"] = {}
        props["id"] = {
            "description": "Message identifier",
            "type": "string",
            "minLength": 1
        }
        props["in_reply_to"] = {
            "description": "Identifier of the message this one answers",
            "type": ["string", "null"]
        }
        props["author"] = {
            "description": "Author's email address",
            "type": "string",
            "minLength": 1
        }
        props["date"] = {
            "description": "ISO-8601 timestamp",
            "type": "string",
            "minLength": 1
        }
        props["body"] = {
            "description": "Message text",
            "type": "string"
        }
        return schema


@dataclass(frozen=True)
class MessageStore:
    """
    Messages of one list in archive order. "by_id" maps each message_id to its position and
    "dangling_refs" holds every in_reply_to value that no stored message resolves.
    """

    messages: Tuple[RawMessage, ...] = ()
    by_id: Mapping[str, int] = field(default_factory=lambda: MappingProxyType({}))
    dangling_refs: frozenset = frozenset()

    @classmethod
    def from_messages(cls, messages):
        messages = tuple(messages)
        by_id = {}
        for position, message in enumerate(messages):
            if message.message_id in by_id:
                raise ValueError("duplicate message id {}".format(message.message_id))
            by_id[message.message_id] = position
        dangling = frozenset(
            m.in_reply_to for m in messages
            if m.in_reply_to is not None and m.in_reply_to not in by_id
        )
        return cls(messages=messages, by_id=_frozen(by_id), dangling_refs=dangling)

    def __len__(self):
        return len(self.messages)

    def get(self, message_id):
        position = self.by_id.get(message_id)
        if position is None:
            return None
        return self.messages[position]

    def parent(self, message):
        if message.in_reply_to is None:
            return None
        return self.get(message.in_reply_to)

    def authors(self):
        return sorted({m.author for m in self.messages})


@dataclass(frozen=True)
class InteractionNetwork:
    """
    Directed weighted reply graph. In the information mode an edge goes from the author of the
    original message to the responder; the status mode holds the same edges reversed.
    Weights count replies and are always >= 1, and there are no self-loops.
    """

    vertices: frozenset = frozenset()
    edges: Mapping[Tuple[str, str], int] = field(default_factory=lambda: MappingProxyType({}))
    direction_mode: str = INFORMATION

    def to_digraph(self):
        graph = nx.DiGraph()
        graph.add_nodes_from(sorted(self.vertices))
        for (src, dst), weight in sorted(self.edges.items()):
            graph.add_edge(src, dst, weight=weight)
        return graph

    def total_weight(self):
        return sum(self.edges.values())

    @staticmethod
    def get_schema():
        schema = {
            "type": "object",
            "required": ["direction_mode", "vertices", "edges"]
        }
        props = schema["properties"] = {}
        props["direction_mode"] = {
            "type": "string",
            "enum": [INFORMATION, STATUS]
        }
        props["vertices"] = {
            "type": "array",
            "items": {"type": "string"}
        }
        props["edges"] = {
            "type": "array",
            "items": {
                "type": "object",
                "required": ["src", "dst", "weight"],
                "properties": {
                    "src": {"type": "string"},
                    "dst": {"type": "string"},
                    "weight": {"type": "integer", "minimum": 1}
                }
            }
        }
        props["metrics"] = {
            "type": "object",
            "additionalProperties": {"type": "object"}
        }
        return schema


@dataclass(frozen=True)
class VertexRow:
    d: int = 0
    d_i: int = 0
    d_o: int = 0
    s: int = 0
    s_i: int = 0
    s_o: int = 0
    bc: float = 0.0
    cc: float = 0.0
    tri: int = 0


@dataclass(frozen=True)
class VertexMetrics:
    """
    Topological values of every vertex, keyed by author.
    """

    rows: Mapping[str, VertexRow] = field(default_factory=lambda: MappingProxyType({}))
    direction_mode: str = INFORMATION

    def __getitem__(self, author):
        return self.rows[author]

    def __contains__(self, author):
        return author in self.rows

    def __len__(self):
        return len(self.rows)

    def authors(self):
        return sorted(self.rows)

    def column(self, name):
        return [getattr(self.rows[a], name) for a in self.authors()]


@dataclass(frozen=True)
class SectorPartition:
    """
    Hub, intermediary and periphery label of each author, with the fractions
    (f_h, f_i, f_p) the partition was built from.
    """

    labels: Mapping[str, str] = field(default_factory=lambda: MappingProxyType({}))
    fractions: Tuple[float, float, float] = (0.05, 0.15, 0.80)

    def label(self, author):
        return self.labels[author]

    def members(self, sector):
        return sorted(a for a, label in self.labels.items() if label == sector)

    def counts(self):
        return {sector: len(self.members(sector)) for sector in SECTORS}


@dataclass(frozen=True)
class ListSummary:
    """
    Activity overview of one list: participants N, messages M, threads Γ, years spanned and
    the share each sector holds of N, M and Γ (percentages).
    """

    n_participants: int
    n_messages: int
    n_threads: int
    span_years: float
    date_first: Optional[datetime]
    date_last: Optional[datetime]
    n_dangling: int
    sector_participants: Mapping[str, int]
    sector_messages: Mapping[str, int]
    sector_threads: Mapping[str, int]
    pct_participants: Mapping[str, float]
    pct_messages: Mapping[str, float]
    pct_threads: Mapping[str, float]


@dataclass(frozen=True)
class Lexicon:
    """
    Linguistic resources consulted by every textual measure. All word forms are lowercase.
    "tag_lexicon" maps a word form to its Brown tags, most frequent first, and
    "suffix_rules" is the ordered list of (suffix, tag) fallbacks.
    """

    known_words: frozenset = frozenset()
    stopwords: frozenset = frozenset()
    synset_words: frozenset = frozenset()
    contractions: frozenset = frozenset()
    tag_lexicon: Mapping[str, Tuple[str, ...]] = field(default_factory=lambda: MappingProxyType({}))
    suffix_rules: Tuple[Tuple[str, str], ...] = ()
    hashes: Mapping[str, str] = field(default_factory=lambda: MappingProxyType({}), compare=False)
    tagger: object = field(default=None, compare=False, repr=False)

    @staticmethod
    def get_manifest_schema():
        resource = {
            "type": "object",
            "required": ["path"],
            "properties": {
                "path": {"type": "string", "minLength": 1},
                "sha256": {"type": "string", "pattern": "^[a-f0-9]{64}$"}
            }
        }
        schema = {
            "type": "object",
            "required": ["resources"]
        }
        props = schema["properties"] = {}
        props["resources"] = {
            "type": "object",
            "required": ["wordlist", "stopwords", "wordnet", "contractions", "tag_lexicon"],
            "properties": {
                "wordlist": resource,
                "stopwords": resource,
                "wordnet": resource,
                "contractions": resource,
                "tag_lexicon": resource
            }
        }
        return schema


@dataclass(frozen=True)
class TokenClass:
    is_punct: bool = False
    is_word: bool = False
    is_known: bool = False
    is_stopword: bool = False
    has_synset: bool = False
    is_contraction: bool = False


@dataclass(frozen=True)
class Corpus:
    """
    Texts gathered for one scope: the whole list, one sector, or a single author.
    """

    messages: Tuple[Tuple[str, str], ...] = ()
    scope: str = "general"

    def __len__(self):
        return len(self.messages)

    def bodies(self):
        return [body for _, body in self.messages]


@dataclass(frozen=True)
class CharMetrics:
    n_chars: int
    pct_space_of_char: float
    pct_punct_of_nonspace: float
    pct_digit_of_nonspace: float
    pct_letter_of_nonspace: float
    pct_other_of_nonspace: float
    pct_vowel_of_letters: float
    pct_upper_of_letters: float
    degenerate: frozenset = frozenset()


@dataclass(frozen=True)
class TokenMetrics:
    n_tokens: int
    chars_per_token: float
    token_diversity: float
    pct_punct_tokens: float
    pct_known_of_nonpunct: float
    lexical_diversity: float
    pct_kwss_of_kw: float
    pct_kwsw_of_kw: float
    pct_ukwsw_of_kw: float
    pct_kw_sw_with_synset_of_kw: float
    pct_sw_without_synset_of_kw: float
    pct_contractions_of_kw: float
    pct_kw_nonsw_nosynset_of_kw: float
    pct_kw_nonsw_synset_of_kw: float
    n_distinct_tokens: int = 0
    n_contractions: int = 0
    degenerate: frozenset = frozenset()


@dataclass(frozen=True)
class SizeStats:
    """
    Population mean and standard deviation of word sizes over every occurrence and over the
    set of distinct forms.
    """

    mean: float
    std: float
    distinct_mean: float
    distinct_std: float
    n: int
    n_distinct: int


@dataclass(frozen=True)
class SizeMetrics:
    """
    Word-size statistics per class. An absent class (no words in the corpus) is None.
    "snsssw" holds stopwords without synset; "skwnsw_nss" known non-stopwords without synset.
    """

    skw: Optional[SizeStats] = None
    skwss: Optional[SizeStats] = None
    ssw: Optional[SizeStats] = None
    snsssw: Optional[SizeStats] = None
    skwnsw_nss: Optional[SizeStats] = None

    def absent(self):
        return frozenset(k for k, v in self.__dict__.items() if v is None)


@dataclass(frozen=True)
class SentenceMetrics:
    n_sents: int
    chars_per_sent_mean: float
    chars_per_sent_std: float
    tokens_per_sent_mean: float
    tokens_per_sent_std: float
    kw_per_sent_mean: float
    kw_per_sent_std: float
    kwssnsw_per_sent_mean: float
    kwssnsw_per_sent_std: float
    degenerate: frozenset = frozenset()


@dataclass(frozen=True)
class MessageMetrics:
    chars_per_msg_mean: float
    chars_per_msg_std: float
    tokens_per_msg_mean: float
    tokens_per_msg_std: float
    sents_per_msg_mean: float
    sents_per_msg_std: float


@dataclass(frozen=True)
class PosMetrics:
    """
    Percentage of each Brown tag over non-punctuation tokens, the five group subtotals and
    the share of tags outside every group.
    """

    tags: Mapping[str, float]
    groups: Mapping[str, float]
    untracked: float
    n_tagged: int
    degenerate: bool = False


@dataclass(frozen=True)
class MetricBundle:
    scope: str
    char: CharMetrics
    token: TokenMetrics
    size: SizeMetrics
    sentence: SentenceMetrics
    message: MessageMetrics
    pos: PosMetrics


@dataclass(frozen=True)
class FeatureMatrix:
    """
    One row per author, columns in a fixed documented order. NaN marks an absent value.
    """

    authors: Tuple[str, ...]
    columns: Tuple[str, ...]
    values: object

    def column(self, name):
        return self.values[:, self.columns.index(name)]

    def select_rows(self, authors):
        wanted = set(authors)
        keep = [i for i, a in enumerate(self.authors) if a in wanted]
        return FeatureMatrix(
            authors=tuple(self.authors[i] for i in keep),
            columns=self.columns,
            values=self.values[keep, :]
        )


@dataclass(frozen=True)
class EmpiricalSample:
    values: Tuple[float, ...]

    @property
    def n(self):
        return len(self.values)


@dataclass(frozen=True)
class KsResult:
    d_stat: float
    n: int
    n_prime: int
    c_prime: float
    reject_at: Optional[float]


@dataclass(frozen=True)
class CorrelationMatrix:
    """
    Pearson r for each feature pair over pairwise-complete rows. NaN marks an absent r
    (zero variance or fewer than two complete rows); "n" holds the rows used per cell.
    """

    features: Tuple[str, ...]
    r: object
    n: object

    def get(self, a, b):
        return float(self.r[self.features.index(a), self.features.index(b)])


@dataclass(frozen=True)
class PcaResult:
    """
    Components in descending order of dispersion. "explained" holds the percentage of the
    total dispersion of each component and "loadings" one unit eigenvector per row.
    """

    features: Tuple[str, ...]
    explained: Tuple[float, ...]
    loadings: object
    eigenvalues: object
    matrix: object
    mode: str = "correlation"


@dataclass(frozen=True)
class SizeHistogram:
    masses: Mapping[int, float]
    normalization: str
    word_class: str = "kw"

    def mass(self, length):
        return self.masses.get(length, 0.0)


@dataclass(frozen=True)
class HistDiffResult:
    positive_diff: float
    l1_diff: float
    word_class: str


@dataclass(frozen=True)
class ListSource:
    name: str
    path: str
    format: str = "mbox"


@dataclass(frozen=True)
class RunConfig:
    """
    Everything a run needs. Paths are absolute once the config factory has resolved them.
    """

    lists: Tuple[ListSource, ...]
    limit: int = 20000
    f_hub: float = 0.05
    f_intermediary: float = 0.15
    lexicon: str = ""
    strip_quotes: bool = True
    out: str = "textnet-output"
    pca_mode: str = "correlation"
    seed: int = 0
    workers: int = 1
    direction: str = INFORMATION
    components: int = 5
    loading_threshold: float = 0.05

    def to_record(self):
        return {
            "lists": [{"name": s.name, "path": s.path, "format": s.format} for s in self.lists],
            "limit": self.limit,
            "f_hub": self.f_hub,
            "f_intermediary": self.f_intermediary,
            "lexicon": self.lexicon,
            "strip_quotes": self.strip_quotes,
            "out": self.out,
            "pca_mode": self.pca_mode,
            "seed": self.seed,
            "workers": self.workers,
            "direction": self.direction,
            "components": self.components,
            "loading_threshold": self.loading_threshold
        }

    @staticmethod
    def get_schema():
        schema = {
            "type": "object",
            "required": ["lists", "limit", "f_hub", "f_intermediary", "lexicon", "out"]
        }
        props = schema["properties"] = {}
        props["lists"] = {
            "description": "Mailing lists to analyse",
            "type": "array",
            "items": {
                "type": "object",
                "required": ["name", "path", "format"],
                "properties": {
                    "name": {"type": "string", "pattern": "^[A-Za-z0-9_.-]{1,64}$"},
                    "path": {"type": "string", "minLength": 1},
                    "format": {"type": "string", "enum": ["mbox", "jsonl"]}
                }
            }
        }
        props["limit"] = {
            "description": "Messages kept per list",
            "type": "integer",
            "exclusiveMinimum": 0
        }
        props["f_hub"] = {
            "description": "Fraction of vertices labeled hub",
            "type": "number",
            "exclusiveMinimum": 0,
            "exclusiveMaximum": 1
        }
        props["f_intermediary"] = {
            "description": "Fraction of vertices labeled intermediary",
            "type": "number",
            "minimum": 0,
            "exclusiveMaximum": 1
        }
        props["lexicon"] = {
            "description": "Lexicon manifest path",
            "type": "string",
            "minLength": 1
        }
        props["strip_quotes"] = {"type": "boolean"}
        props["out"] = {"type": "string", "minLength": 1}
        props["pca_mode"] = {"type": "string", "enum": ["correlation", "covariance"]}
        props["seed"] = {"type": "integer", "minimum": 0}
        props["workers"] = {"type": "integer", "minimum": 1}
        props["direction"] = {"type": "string", "enum": [INFORMATION, STATUS]}
        props["components"] = {"type": "integer", "minimum": 1}
        props["loading_threshold"] = {"type": "number", "minimum": 0}
        return schema
