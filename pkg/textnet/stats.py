"""
Statistical comparisons: the adapted two-sample Kolmogorov-Smirnov test, pairwise-complete
Pearson correlation matrices and principal component analysis.
"""

import logging
import math

import numpy as np

from textnet.constants import *
from textnet.exceptions import DegenerateMatrix, EmptySample, TooFewRows
from textnet.models import CorrelationMatrix, EmpiricalSample, FeatureMatrix, KsResult, PcaResult

logger = logging.getLogger(__name__)


def make_sample(values):
    """
    EmpiricalSample of the finite entries of values; NaN marks an absent observation.
    """

    return EmpiricalSample(values=tuple(float(v) for v in values if math.isfinite(v)))


def c_alpha(alpha):
    """
    Tabulated critical coefficient c(alpha).
    """

    for level, coefficient in C_ALPHA:
        if level == alpha:
            return coefficient
    raise KeyError(alpha)


def ks_reference_threshold():
    return KS_REFERENCE_THRESHOLD


def differ(result):
    return result.c_prime > ks_reference_threshold()


def ks_statistic(a, b):
    """
    Two-sided sup |F_a - F_b| evaluated at every point of both samples.
    """

    a = np.sort(np.asarray(a, dtype=float))
    b = np.sort(np.asarray(b, dtype=float))
    points = np.concatenate([a, b])
    cdf_a = np.searchsorted(a, points, side="right") / a.size
    cdf_b = np.searchsorted(b, points, side="right") / b.size
    return float(np.max(np.abs(cdf_a - cdf_b)))


def ks_adapted(a, b):
    """
    Kolmogorov-Smirnov distance D of two samples and the statistic
    c' = D / sqrt((n + n') / (n n')). reject_at is the smallest tabulated alpha whose
    c(alpha) lies below c', or None.

    : param EmpiricalSample a: first sample
    : param EmpiricalSample b: second sample
    """

    values_a = a.values if isinstance(a, EmpiricalSample) else tuple(a)
    values_b = b.values if isinstance(b, EmpiricalSample) else tuple(b)
    if not values_a or not values_b:
        raise EmptySample()

    n = len(values_a)
    n_prime = len(values_b)
    d_stat = ks_statistic(values_a, values_b)
    c_prime = d_stat / math.sqrt((n + n_prime) / (n * n_prime))

    reject_at = None
    for alpha, coefficient in sorted(C_ALPHA):
        if coefficient < c_prime:
            reject_at = alpha
            break
    return KsResult(d_stat=d_stat, n=n, n_prime=n_prime, c_prime=c_prime, reject_at=reject_at)


def _columns(features, names):
    if isinstance(features, FeatureMatrix):
        names = tuple(names or features.columns)
        values = np.column_stack([features.column(name) for name in names]) if names else np.empty((len(features.authors), 0))
        return names, np.asarray(values, dtype=float)
    values = np.asarray(features, dtype=float)
    if names is None:
        names = tuple("x{}".format(i) for i in range(values.shape[1]))
    return tuple(names), values


def _pearson(x, y):
    dx = x - x.mean()
    dy = y - y.mean()
    sxx = float(np.dot(dx, dx))
    syy = float(np.dot(dy, dy))
    if sxx == 0.0 or syy == 0.0:
        return math.nan
    r = float(np.dot(dx, dy)) / math.sqrt(sxx * syy)
    return max(-1.0, min(1.0, r))


def correlation_matrix(features, names=None):
    """
    Pearson r for every pair of features over the rows where both values are present.
    Pairs with a constant side or fewer than two shared rows get NaN.

    : param features: FeatureMatrix or 2-d array, one row per observation
    : param list names: features to correlate, in output order
    """

    names, values = _columns(features, names)
    if values.shape[0] < 2:
        raise TooFewRows()

    k = len(names)
    r = np.full((k, k), np.nan)
    counts = np.zeros((k, k), dtype=int)
    present = np.isfinite(values)
    for i in range(k):
        for j in range(i, k):
            mask = present[:, i] & present[:, j]
            n = int(mask.sum())
            counts[i, j] = counts[j, i] = n
            if n < 2:
                continue
            if i == j:
                column = values[mask, i]
                r[i, i] = 1.0 if float(np.ptp(column)) > 0 else np.nan
                continue
            r[i, j] = r[j, i] = _pearson(values[mask, i], values[mask, j])
    return CorrelationMatrix(features=names, r=r, n=counts)


def pca(features, standardize=True, names=None):
    """
    Eigendecomposition of the correlation matrix (standardize on) or of the covariance
    matrix. Rows with an absent value are dropped. Each loading row is a unit vector
    whose largest-magnitude entry is positive.

    : param features: FeatureMatrix or 2-d array, one row per observation
    : param bool standardize: z-score the columns first
    : param list names: features to use, in order
    """

    names, values = _columns(features, names)
    values = values[np.all(np.isfinite(values), axis=1)]
    n_rows = values.shape[0]
    if n_rows < 2:
        raise TooFewRows()

    centered = values - values.mean(axis=0)
    if standardize:
        std = values.std(axis=0)
        scale = np.where(std > 0, std, 1.0)
        centered = np.where(std > 0, centered / scale, 0.0)
    matrix = centered.T @ centered / n_rows

    eigenvalues, eigenvectors = np.linalg.eigh(matrix)
    order = np.argsort(eigenvalues)[::-1]
    eigenvalues = np.clip(eigenvalues[order], 0.0, None)
    loadings = eigenvectors[:, order].T
    total = float(eigenvalues.sum())
    if total <= 0.0:
        raise DegenerateMatrix()

    for row in loadings:
        if row[np.argmax(np.abs(row))] < 0:
            row *= -1.0

    logger.debug("pca on %d rows and %d features", n_rows, len(names))
    return PcaResult(
        features=names,
        explained=tuple(float(v) for v in 100.0 * eigenvalues / total),
        loadings=loadings,
        eigenvalues=eigenvalues,
        matrix=matrix,
        mode="correlation" if standardize else "covariance"
    )


def filter_loadings(result, threshold=DEFAULTS["loading_threshold"]):
    """
    Loadings with |value| > threshold per component, as (feature, value) pairs in
    feature order. The PcaResult itself is left untouched.
    """

    if threshold < 0:
        raise ValueError("threshold must be >= 0")
    table = []
    for row in result.loadings:
        table.append(tuple(
            (name, float(value)) for name, value in zip(result.features, row)
            if abs(value) > threshold
        ))
    return tuple(table)
