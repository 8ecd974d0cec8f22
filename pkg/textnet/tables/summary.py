from textnet.constants import *
from textnet.utils import ReportBuilder


def _date(moment):
    return moment.isoformat() if moment is not None else None


def summary_table(list_name, summary):
    """
    Activity of one list: dates of the first and last message, participants, messages
    and threads with their sector shares, dangling references and years spanned.

    : param str list_name: list label used in the caption
    : param ListSummary summary: values to print
    """

    body = ReportBuilder()
    body.add_caption("Activity of {}".format(list_name))
    body.add_scope_columns("measure", SCOPES)

    counts = {
        "n_participants": summary.sector_participants,
        "n_messages": summary.sector_messages,
        "n_threads": summary.sector_threads,
    }
    shares = {
        "pct_participants": (summary.pct_participants, summary.n_participants),
        "pct_messages": (summary.pct_messages, summary.n_messages),
        "pct_threads": (summary.pct_threads, summary.n_threads),
    }
    for field, label in SUMMARY_ROWS:
        if field in counts:
            sectors = counts[field]
            body.add_row(label, [getattr(summary, field)] + [sectors[s] for s in SCOPES[1:]])
        elif field in shares:
            sectors, total = shares[field]
            body.add_row(label, [100.0 if total else None] + [sectors[s] for s in SCOPES[1:]])
        elif field.startswith("date_"):
            body.add_row(label, [_date(getattr(summary, field)), None, None, None])
        else:
            body.add_row(label, [getattr(summary, field), None, None, None])
    return body
