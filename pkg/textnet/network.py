"""
Interaction network of a mailing list: construction from reply links, topological
vertex metrics, strength partitioning into sectors and the activity summary.
"""

import csv
import logging
import math
from collections import Counter
from types import MappingProxyType

import networkx as nx
from jsonschema import validate

from textnet.constants import *
from textnet.exceptions import AlreadyInverted, DegenerateNetwork, EmptyNetwork, InvalidConfig, PartitionMismatch
from textnet.models import InteractionNetwork, ListSummary, SectorPartition, VertexMetrics, VertexRow
from textnet.utils import json_value, percentage, write_json

logger = logging.getLogger(__name__)

SECONDS_PER_YEAR = 365.25 * 86400


def build_information_network(store):
    """
    One edge author(original) -> author(reply) per resolvable reply, weights counting
    replies. Self-replies add no edge; every author is a vertex.

    : param MessageStore store: messages of one list
    """

    weights = Counter()
    for message in store.messages:
        parent = store.parent(message)
        if parent is None or parent.author == message.author:
            continue
        weights[(parent.author, message.author)] += 1
    return InteractionNetwork(
        vertices=frozenset(m.author for m in store.messages),
        edges=MappingProxyType(dict(weights)),
        direction_mode=INFORMATION
    )


def invert_to_status_network(net):
    if net.direction_mode != INFORMATION:
        raise AlreadyInverted()
    return InteractionNetwork(
        vertices=net.vertices,
        edges=MappingProxyType({(dst, src): w for (src, dst), w in net.edges.items()}),
        direction_mode=STATUS
    )


def compute_vertex_metrics(net):
    """
    Degree and strength (in, out, total), unnormalized shortest-path betweenness on the
    directed graph with unit edge lengths, and clustering coefficient plus triangle count
    on the undirected simplification.
    """

    if not net.vertices:
        raise EmptyNetwork()

    graph = net.to_digraph()
    betweenness = nx.betweenness_centrality(graph, normalized=False)
    undirected = nx.Graph(graph.to_undirected())
    clustering = nx.clustering(undirected)
    triangles = nx.triangles(undirected)

    rows = {}
    for author in sorted(net.vertices):
        d_i = graph.in_degree(author)
        d_o = graph.out_degree(author)
        s_i = graph.in_degree(author, weight="weight")
        s_o = graph.out_degree(author, weight="weight")
        rows[author] = VertexRow(
            d=d_i + d_o,
            d_i=d_i,
            d_o=d_o,
            s=s_i + s_o,
            s_i=s_i,
            s_o=s_o,
            bc=float(betweenness[author]),
            cc=float(clustering[author]),
            tri=int(triangles[author])
        )
    return VertexMetrics(rows=MappingProxyType(rows), direction_mode=net.direction_mode)


def sector_sizes(n_vertices, f_h, f_i):
    """
    (hubs, intermediaries, periphery) counts for a network of n_vertices.
    """

    n_h = min(math.ceil(round(f_h * n_vertices, 9)), n_vertices)
    n_i = min(math.ceil(round(f_i * n_vertices, 9)), n_vertices - n_h)
    return n_h, n_i, n_vertices - n_h - n_i


def rank_by_strength(metrics):
    return sorted(metrics.authors(), key=lambda a: (-metrics[a].s, a))


def partition_by_strength(metrics, f_h=DEFAULTS["f_hub"], f_i=DEFAULTS["f_intermediary"]):
    """
    Labels the top ceil(f_h N) vertices by total strength as hubs, the next ceil(f_i N) as
    intermediaries and the rest as periphery. Ties go to the smaller author id.
    """

    if not (0 < f_h and 0 <= f_i and f_h + f_i < 1):
        raise InvalidConfig("Sector fractions need 0 < f_h, 0 <= f_i and f_h + f_i < 1.")
    if len(metrics) < 3:
        raise DegenerateNetwork()

    n_h, n_i, _ = sector_sizes(len(metrics), f_h, f_i)
    labels = {}
    for rank, author in enumerate(rank_by_strength(metrics)):
        if rank < n_h:
            labels[author] = HUB
        elif rank < n_h + n_i:
            labels[author] = INTERMEDIARY
        else:
            labels[author] = PERIPHERY
    return SectorPartition(
        labels=MappingProxyType(labels),
        fractions=(f_h, f_i, round(1 - f_h - f_i, 12))
    )


def is_thread_root(store, message):
    return message.in_reply_to is None or message.in_reply_to not in store.by_id


def count_threads(store):
    return sum(1 for m in store.messages if is_thread_root(store, m))


def list_summary(store, partition):
    """
    Summary figures of one list. Sector shares attribute each message and each thread
    root to the sector of its author.

    : param MessageStore store: messages of one list
    : param SectorPartition partition: labels covering every author of the store
    """

    authors = store.authors()
    for author in authors:
        if author not in partition.labels:
            raise PartitionMismatch(author)

    participants = Counter(partition.label(a) for a in authors)
    messages = Counter()
    threads = Counter()
    for message in store.messages:
        sector = partition.label(message.author)
        messages[sector] += 1
        if is_thread_root(store, message):
            threads[sector] += 1

    n_threads = sum(threads.values())
    dates = [m.sent_at for m in store.messages]
    span = (max(dates) - min(dates)).total_seconds() / SECONDS_PER_YEAR if dates else 0.0

    return ListSummary(
        n_participants=len(authors),
        n_messages=len(store),
        n_threads=n_threads,
        span_years=span,
        date_first=min(dates) if dates else None,
        date_last=max(dates) if dates else None,
        n_dangling=len(store.dangling_refs),
        sector_participants=MappingProxyType({s: participants[s] for s in SECTORS}),
        sector_messages=MappingProxyType({s: messages[s] for s in SECTORS}),
        sector_threads=MappingProxyType({s: threads[s] for s in SECTORS}),
        pct_participants=MappingProxyType({s: percentage(participants[s], len(authors)) for s in SECTORS}),
        pct_messages=MappingProxyType({s: percentage(messages[s], len(store)) for s in SECTORS}),
        pct_threads=MappingProxyType({s: percentage(threads[s], n_threads) for s in SECTORS})
    )


def write_edge_list(net, path):
    with open(path, "w", encoding="utf-8", newline="") as handle:
        writer = csv.writer(handle, delimiter="\t", lineterminator="\n")
        writer.writerow(["src", "dst", "weight"])
        for (src, dst), weight in sorted(net.edges.items()):
            writer.writerow([src, dst, weight])


def network_document(net, metrics=None):
    """
    JSON-ready description of the network, validated against its schema.
    """

    body = {
        "direction_mode": net.direction_mode,
        "vertices": sorted(net.vertices),
        "edges": [
            {"src": src, "dst": dst, "weight": weight}
            for (src, dst), weight in sorted(net.edges.items())
        ]
    }
    if metrics is not None:
        body["metrics"] = {
            author: {k: json_value(v) for k, v in vars(metrics[author]).items()}
            for author in metrics.authors()
        }
    validate(body, InteractionNetwork.get_schema())
    return body


def write_network_json(net, metrics, path):
    write_json(path, network_document(net, metrics))


def write_partition_csv(partition, metrics, path):
    with open(path, "w", encoding="utf-8", newline="") as handle:
        writer = csv.writer(handle, lineterminator="\n")
        writer.writerow(["author", "sector", "s"])
        for author in rank_by_strength(metrics):
            writer.writerow([author, partition.label(author), metrics[author].s])
