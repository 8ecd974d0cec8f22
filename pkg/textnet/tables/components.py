"""
Correlation and principal component tables of the per-author features, one column per
scope: all authors (g.) and the authors of each sector (p., i., h.).
"""

import logging
from itertools import combinations, product

from textnet.constants import *
from textnet.exceptions import DegenerateMatrix, TooFewRows
from textnet.stats import correlation_matrix, filter_loadings, pca
from textnet.utils import ReportBuilder

logger = logging.getLogger(__name__)

CORRELATION_PAIRS = {
    "topological": list(combinations(TOPOLOGICAL_CORRELATION, 2)),
    "textual": list(combinations(TEXTUAL_CORRELATION, 2)),
    "mixed": list(product(MIXED_TEXTUAL, TOPOLOGICAL_CORRELATION)),
}


def scope_features(features, partition):
    """
    Rows of each scope. The general scope holds every author.
    """

    scoped = {GENERAL: features}
    for sector in SECTORS:
        scoped[sector] = features.select_rows(partition.members(sector))
    return scoped


def _matrix(features, names):
    try:
        return correlation_matrix(features, names)
    except TooFewRows:
        return None


def correlation_table(kind, scoped):
    """
    Pearson r of each feature pair (rows) in each scope (columns).

    : param str kind: topological, textual or mixed
    : param dict scoped: scope -> FeatureMatrix
    """

    pairs = CORRELATION_PAIRS[kind]
    names = sorted({name for pair in pairs for name in pair}, key=FEATURE_COLUMNS.index)
    matrices = {scope: _matrix(scoped[scope], names) for scope in SCOPES}

    body = ReportBuilder(caption="Correlation of {} measures".format(kind))
    body.add_scope_columns("pair", SCOPES)
    for a, b in pairs:
        body.add_row("{}-{}".format(a, b), [
            None if matrices[scope] is None else matrices[scope].get(a, b)
            for scope in SCOPES
        ])
    for scope in SCOPES:
        if matrices[scope] is None:
            body.add_note("{} fewer than two authors".format(SCOPE_COLUMNS[scope]))
    return body


def correlation_tables(features, partition):
    scoped = scope_features(features, partition)
    return {
        "correlation_{}".format(kind): correlation_table(kind, scoped)
        for kind in CORRELATION_PAIRS
    }


def _pca(features, standardize):
    try:
        return pca(features, standardize=standardize, names=PCA_FEATURES)
    except (TooFewRows, DegenerateMatrix) as e:
        logger.debug("pca skipped: %s", e)
        return None


def pca_tables(features, partition, mode=DEFAULTS["pca_mode"], components=DEFAULTS["components"],
               threshold=DEFAULTS["loading_threshold"]):
    """
    Composition of the first components in each scope. The first row holds the share
    of dispersion (λ, percent); feature rows list loadings with |val| above the
    threshold, empty where filtered out.
    """

    scoped = scope_features(features, partition)
    results = {scope: _pca(scoped[scope], mode == "correlation") for scope in SCOPES}
    filtered = {
        scope: filter_loadings(result, threshold) if result is not None else None
        for scope, result in results.items()
    }

    tables = {}
    for k in range(components):
        body = ReportBuilder()
        body.add_caption("Composition of component {} (threshold: |val|>{})".format(k + 1, threshold))
        body.add_scope_columns("feature", SCOPES)
        body.add_row("λ", [
            results[s].explained[k] if results[s] is not None and k < len(results[s].explained) else None
            for s in SCOPES
        ])
        kept = {}
        for scope in SCOPES:
            if filtered[scope] is not None and k < len(filtered[scope]):
                kept[scope] = dict(filtered[scope][k])
        for name in PCA_FEATURES:
            values = [kept.get(scope, {}).get(name) for scope in SCOPES]
            if any(v is not None for v in values):
                body.add_row(name, values)
        tables["pca_{}".format(k + 1)] = body
    return tables
