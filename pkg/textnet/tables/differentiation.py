"""
Kolmogorov-Smirnov differentiation grids. Every author is one observation; the value
observed is the author's own measure (for instance the noun incidence of the author's
messages).
"""

from itertools import combinations

from textnet.constants import *
from textnet.exceptions import EmptySample
from textnet.stats import ks_adapted, ks_reference_threshold, make_sample
from textnet.utils import ReportBuilder


def sector_samples(features, partition, column):
    """
    EmpiricalSample of one feature column per sector.
    """

    return {
        sector: make_sample(features.select_rows(partition.members(sector)).column(column))
        for sector in SECTORS
    }


def _ks(a, b):
    try:
        return ks_adapted(a, b)
    except EmptySample:
        return None


def _c_prime(result):
    return None if result is None else result.c_prime


def intra_table(measure, samples):
    """
    One row per list comparing its sectors pairwise (H-P, H-I, I-P).

    : param str measure: measure name used in the caption
    : param dict samples: list name -> sector -> EmpiricalSample, in list order
    """

    body = ReportBuilder()
    body.add_caption("Differentiation of {} between sectors of each list".format(measure))
    body.add_columns(["list"] + [label for label, _, _ in KS_SECTOR_PAIRS])
    body.add_threshold(ks_reference_threshold())
    results = []
    for list_name, by_sector in samples.items():
        row = []
        for label, first, second in KS_SECTOR_PAIRS:
            result = _ks(by_sector[first], by_sector[second])
            results.append((list_name, label, result))
            row.append(_c_prime(result))
        body.add_row(list_name, row)
    return body, results


def inter_table(measure, samples):
    """
    One row per sector (P, I, H) comparing it across every pair of lists.
    """

    pairs = list(combinations(samples, 2))
    body = ReportBuilder()
    body.add_caption("Differentiation of {} between lists for each sector".format(measure))
    body.add_columns(["sector"] + ["{}-{}".format(a, b) for a, b in pairs])
    body.add_threshold(ks_reference_threshold())
    results = []
    for label, sector in KS_INTER_ROWS:
        row = []
        for a, b in pairs:
            result = _ks(samples[a][sector], samples[b][sector])
            results.append((label, "{}-{}".format(a, b), result))
            row.append(_c_prime(result))
        body.add_row(label, row)
    return body, results


def results_table(details):
    """
    Long listing of every comparison with D, both sample sizes, c' and the rejection level.

    : param list details: (measure, grid, row, column, KsResult or None) tuples
    """

    body = ReportBuilder(caption="Kolmogorov-Smirnov comparisons")
    body.add_columns(["measure", "grid", "row", "column", "D", "n", "n'", "c'", "reject_at", "differ"])
    for measure, grid, row, column, result in details:
        if result is None:
            body.add_row(measure, [grid, row, column, None, None, None, None, None, None])
            continue
        body.add_row(measure, [
            grid, row, column, result.d_stat, result.n, result.n_prime, result.c_prime,
            result.reject_at, result.c_prime > ks_reference_threshold()
        ])
    return body


def ks_tables(samples_by_measure):
    """
    Intra-list and inter-list grids of every measure plus the long listing.

    : param dict samples_by_measure: measure -> list name -> sector -> EmpiricalSample
    """

    tables = {}
    details = []
    for measure, samples in samples_by_measure.items():
        intra, intra_results = intra_table(measure, samples)
        inter, inter_results = inter_table(measure, samples)
        tables["ks_{}_intra".format(measure)] = intra
        tables["ks_{}_inter".format(measure)] = inter
        details.extend((measure, "intra", row, column, r) for row, column, r in intra_results)
        details.extend((measure, "inter", row, column, r) for row, column, r in inter_results)
    tables["ks_results"] = results_table(details)
    return tables
