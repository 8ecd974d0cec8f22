import csv
import hashlib
import json
import math
import os

import numpy as np

from textnet.constants import *

# TableBuilder follows the dictionary-builder pattern of the Mason document
# builders from the Programmable Web Project course material:
# https://lovelace.oulu.fi/ohjelmoitava-web/ohjelmoitava-web/


def format_value(value, digits=4):
    """
    Renders one table cell. None and NaN become empty cells, floats are fixed-point.

    : param value: cell content
    : param int digits: decimals kept for floats
    """

    if value is None:
        return ""
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, (int, np.integer)):
        return str(int(value))
    if isinstance(value, (float, np.floating)):
        if math.isnan(value):
            return ""
        return "{:.{}f}".format(float(value), digits)
    return str(value)


def json_value(value):
    if isinstance(value, (float, np.floating)):
        value = float(value)
        if math.isnan(value) or math.isinf(value):
            return None
        return value
    if isinstance(value, np.integer):
        return int(value)
    return value


def sha256_file(path):
    digest = hashlib.sha256()
    with open(path, "rb") as handle:
        for chunk in iter(lambda: handle.read(65536), b""):
            digest.update(chunk)
    return digest.hexdigest()


def mean_std(values):
    """
    Population mean and standard deviation. Empty input gives (0.0, 0.0).
    """

    if len(values) == 0:
        return 0.0, 0.0
    arr = np.asarray(values, dtype=float)
    return float(arr.mean()), float(arr.std())


def percentage(part, whole):
    """
    100 * part / whole, or None when whole is zero.
    """

    if whole == 0:
        return None
    return 100.0 * part / whole


def write_json(path, document):
    with open(path, "w", encoding="utf-8", newline="\n") as handle:
        json.dump(document, handle, indent=2, sort_keys=True, ensure_ascii=False)
        handle.write("\n")


def create_error_report(directory, stage, error):
    """
    Writes the FAILED marker into an output directory. The marker body is an error
    document naming the stage that failed.

    : param str directory: output directory of the run or of one list
    : param str stage: pipeline stage name
    : param TextnetError error: the failure
    """

    body = TableBuilder(caption=FAILED_MARKER)
    body.add_error(error.title, str(error))
    body["stage"] = stage
    body["exit_code"] = error.exit_code
    os.makedirs(directory, exist_ok=True)
    path = os.path.join(directory, FAILED_MARKER)
    write_json(path, body)
    return path


class TableBuilder(dict):
    """
    A convenience class for managing dictionaries that represent output tables. A table
    has a caption, a header row and labeled rows of cells. The same dictionary is dumped
    to JSON as is, written to CSV, or rendered as aligned text.
    """

    def add_caption(self, caption):
        self["caption"] = caption

    def add_columns(self, columns):
        """
        Sets the header row. The first entry names the row-label column.

        : param list columns: column labels
        """

        self["columns"] = list(columns)

    def add_row(self, label, values):
        """
        Appends a labeled row. Cells are kept as values, formatting happens on output.

        : param str label: row label, printed verbatim
        : param list values: one cell per non-label column
        """

        if "rows" not in self:
            self["rows"] = []
        self["rows"].append([label] + [json_value(v) for v in values])

    def add_error(self, title, details):
        """
        Adds an error element to the table. Only used for FAILED markers and for tables
        that could not be computed.

        : param str title: Short title for the error
        : param str details: Longer human-readable description
        """

        self["@error"] = {
            "@message": title,
            "@messages": [details],
        }

    def add_note(self, note):
        if "notes" not in self:
            self["notes"] = []
        self["notes"].append(note)

    def write_csv(self, path, digits=10):
        with open(path, "w", encoding="utf-8", newline="") as handle:
            writer = csv.writer(handle, lineterminator="\n")
            writer.writerow(self.get("columns", []))
            for row in self.get("rows", []):
                writer.writerow([row[0]] + [format_value(v, digits) for v in row[1:]])

    def render(self, digits=2):
        """
        Aligned plain-text rendering with the caption on top.
        """

        columns = self.get("columns", [])
        body = [[str(row[0])] + [self._cell(v, digits) for v in row[1:]] for row in self.get("rows", [])]
        widths = [len(str(c)) for c in columns]
        for row in body:
            for i, cell in enumerate(row):
                if i < len(widths):
                    widths[i] = max(widths[i], len(cell))
                else:
                    widths.append(len(cell))
        lines = [self.get("caption", "")]
        if columns:
            lines.append("  ".join(str(c).ljust(w) for c, w in zip(columns, widths)).rstrip())
        for row in body:
            cells = [row[0].ljust(widths[0])] + [c.rjust(w) for c, w in zip(row[1:], widths[1:])]
            lines.append("  ".join(cells).rstrip())
        for note in self.get("notes", []):
            lines.append(note)
        if "@error" in self:
            lines.append("error: {}".format(self["@error"]["@messages"][0]))
        return "\n".join(lines) + "\n"

    def _cell(self, value, digits):
        return format_value(value, digits)


class ReportBuilder(TableBuilder):
    """
    A subclass to build the tables of the analysis report.
    """

    def add_scope_columns(self, label, scopes):
        """
        Header with one column per scope, named g., p., i. and h.

        : param str label: header of the row-label column
        : param list scopes: scopes in column order
        """

        self.add_columns([label] + [SCOPE_COLUMNS[s] for s in scopes])

    def add_metric_rows(self, rows, by_scope, scopes):
        """
        Adds one row per (field, label) pair, reading the field from each scope's value
        object. Missing scopes give empty cells.

        : param tuple rows: (field, label) pairs in print order
        : param dict by_scope: scope -> object or dict holding the fields
        : param list scopes: scopes in column order
        """

        for field, label in rows:
            values = []
            for scope in scopes:
                source = by_scope.get(scope)
                if source is None:
                    values.append(None)
                elif isinstance(source, dict):
                    values.append(source.get(field))
                else:
                    values.append(getattr(source, field, None))
            self.add_row(label, values)

    def add_subtotal_row(self, group, values):
        self.add_row("+ {}".format(group), values)

    def add_threshold(self, threshold):
        """
        Cells whose value exceeds the threshold get a trailing "*" when rendered.
        """

        self["threshold"] = threshold

    def _cell(self, value, digits):
        text = format_value(value, digits)
        threshold = self.get("threshold")
        if threshold is not None and isinstance(value, float) and not math.isnan(value) and value > threshold:
            text += "*"
        return text
