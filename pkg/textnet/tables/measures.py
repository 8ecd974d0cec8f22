"""
Measure tables of the text produced in each scope: characters, tokens, word sizes,
sentences, messages and Brown tag incidence. Columns are the g., p., i. and h. scopes.
"""

from textnet.constants import *
from textnet.utils import ReportBuilder, json_value


def _family(bundles, family):
    return {scope: getattr(bundle, family) for scope, bundle in bundles.items()}


def _add_degenerate_notes(body, by_scope):
    for scope in SCOPES:
        source = by_scope.get(scope)
        flagged = getattr(source, "degenerate", None) if source is not None else None
        if flagged and not isinstance(flagged, bool):
            body.add_note("{} degenerate: {}".format(SCOPE_COLUMNS[scope], ", ".join(sorted(flagged))))


def char_table(bundles):
    body = ReportBuilder(caption="Measures based on characters")
    body.add_scope_columns("measure", SCOPES)
    by_scope = _family(bundles, "char")
    body.add_metric_rows(CHAR_ROWS, by_scope, SCOPES)
    _add_degenerate_notes(body, by_scope)
    return body


def token_table(bundles):
    body = ReportBuilder(caption="Measures on tokens, known words and stopwords")
    body.add_scope_columns("measure", SCOPES)
    by_scope = _family(bundles, "token")
    body.add_metric_rows(TOKEN_ROWS, by_scope, SCOPES)
    _add_degenerate_notes(body, by_scope)
    return body


def size_rows():
    """
    (class field, attribute, label) triples of the word size table.
    """

    rows = []
    for field, _ in SIZE_CLASSES:
        rows.append((field, "mean", "μ({})".format(field)))
        rows.append((field, "std", "σ({})".format(field)))
        rows.append((field, "distinct_mean", "μ(≠{})".format(field)))
        rows.append((field, "distinct_std", "σ(≠{})".format(field)))
    return rows


def size_table(bundles):
    body = ReportBuilder(caption="Sizes of tokens and words")
    body.add_scope_columns("measure", SCOPES)
    for field, attr, label in size_rows():
        values = []
        for scope in SCOPES:
            bundle = bundles.get(scope)
            stats = getattr(bundle.size, field) if bundle is not None else None
            values.append(getattr(stats, attr) if stats is not None else None)
        body.add_row(label, values)
    return body


def sentence_table(bundles):
    body = ReportBuilder(caption="Sizes of sentences in characters and in tokens")
    body.add_scope_columns("measure", SCOPES)
    by_scope = _family(bundles, "sentence")
    body.add_metric_rows(SENTENCE_ROWS, by_scope, SCOPES)
    _add_degenerate_notes(body, by_scope)
    return body


def message_table(bundles):
    body = ReportBuilder(caption="Mean and standard deviation of message sizes")
    body.add_scope_columns("measure", SCOPES)
    body.add_metric_rows(MESSAGE_ROWS, _family(bundles, "message"), SCOPES)
    return body


def pos_table(bundles):
    """
    Incidence of Brown tags, each group followed by its "+" subtotal row.
    """

    body = ReportBuilder(caption="Incidence of Brown tags")
    body.add_scope_columns("tag", SCOPES)
    by_scope = _family(bundles, "pos")
    for group, members in TAG_GROUPS:
        for tag in members:
            body.add_row(tag, [by_scope[s].tags.get(tag) if s in by_scope else None for s in SCOPES])
        body.add_subtotal_row(group, [by_scope[s].groups[group] if s in by_scope else None for s in SCOPES])
    body.add_row("untracked", [by_scope[s].untracked if s in by_scope else None for s in SCOPES])
    for scope in SCOPES:
        if scope in by_scope and by_scope[scope].degenerate:
            body.add_note("{} degenerate: no taggable tokens".format(SCOPE_COLUMNS[scope]))
    return body


def measure_tables(bundles):
    """
    All measure tables keyed by their output name.

    : param dict bundles: scope -> MetricBundle; scopes without text are left out
    """

    return {
        "chars": char_table(bundles),
        "tokens": token_table(bundles),
        "sizes": size_table(bundles),
        "sentences": sentence_table(bundles),
        "messages": message_table(bundles),
        "pos": pos_table(bundles),
    }


def long_table(list_name, tables):
    """
    Every cell of the measure tables as one (list, scope, metric, value) row.
    """

    body = ReportBuilder(caption="Measures of {}".format(list_name))
    body.add_columns(["list", "scope", "metric", "value"])
    for name, table in tables.items():
        for row in table.get("rows", []):
            for scope, value in zip(SCOPES, row[1:]):
                body.add_row(list_name, [scope, "{}:{}".format(name, row[0]), value])
    return body


def measures_document(tables):
    """
    JSON document keyed by table name, then verbatim row label, then scope column.
    """

    document = {}
    for name, table in tables.items():
        columns = table["columns"][1:]
        document[name] = {
            row[0]: {column: json_value(v) for column, v in zip(columns, row[1:])}
            for row in table.get("rows", [])
        }
    return document
