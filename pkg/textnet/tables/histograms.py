from textnet.constants import *
from textnet.utils import ReportBuilder


def histogram_table(list_name, pair, scope=GENERAL):
    """
    Incident and existent masses for every length from 1 to the longest observed.
    """

    incident, existent = pair
    longest = max(list(incident.masses) + list(existent.masses))
    body = ReportBuilder()
    body.add_caption("Size of words of class {} in {} ({})".format(incident.word_class, list_name, scope))
    body.add_columns(["length", "incident_mass", "existent_mass"])
    for length in range(1, longest + 1):
        body.add_row(length, [incident.mass(length), existent.mass(length)])
    return body


def diff_columns(list_names):
    return ["{} {}".format(name, SCOPE_COLUMNS[scope]) for name in list_names for scope in SCOPES]


def diff_tables(results, list_names):
    """
    Word class x (list, scope) grids of the L1 difference, the cumulative positive
    difference and the crossing length.

    : param dict results: list name -> (word class, scope) -> (HistDiffResult, crossing)
    : param list list_names: column order
    """

    grids = {
        "histdiff_l1": ReportBuilder(caption="L1 difference of incident and existent word sizes"),
        "histdiff_positive": ReportBuilder(caption="Cumulative positive difference of incident and existent word sizes"),
        "histdiff_crossing": ReportBuilder(caption="Crossing length of incident and existent word sizes"),
    }
    for body in grids.values():
        body.add_columns(["class"] + diff_columns(list_names))
    for word_class in WORD_CLASSES:
        cells = [
            results.get(name, {}).get((word_class, scope))
            for name in list_names
            for scope in SCOPES
        ]
        grids["histdiff_l1"].add_row(word_class, [c[0].l1_diff if c else None for c in cells])
        grids["histdiff_positive"].add_row(word_class, [c[0].positive_diff if c else None for c in cells])
        grids["histdiff_crossing"].add_row(word_class, [c[1] if c else None for c in cells])
    return grids
