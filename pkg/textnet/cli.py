"""
Command line interface and the batch pipeline.

    textnet analyze --config lists.ini [--limit N] [--f-hub X] [--f-intermediary Y] ...
    textnet validate --config lists.ini
    textnet ingest --format mbox --in archive.mbox --out store.jsonl
    textnet build-lexicon [--out DIR]
"""

import logging
import os
import sys
from collections import namedtuple
from concurrent.futures import ThreadPoolExecutor
from contextlib import contextmanager

import click
import numpy as np

from textnet import __version__, create_config
from textnet.constants import *
from textnet.exceptions import ConfigError, EmptyClass, NumericalError, OutputError, ResourceError, TextnetError
from textnet.histdiff import build_histograms, crossing_length, cumulative_positive_difference
from textnet.ingest import dump_jsonl, load_store, truncate
from textnet.lexicon import (
    build_lexicon,
    check_hashes,
    is_punctuation,
    load_manifest,
    read_gold_sample,
    read_manifest,
    tag_accuracy,
)
from textnet.network import (
    build_information_network,
    compute_vertex_metrics,
    invert_to_status_network,
    list_summary,
    partition_by_strength,
    write_edge_list,
    write_network_json,
    write_partition_csv,
)
from textnet.tables import write_rendering, write_table
from textnet.tables.components import correlation_tables, pca_tables
from textnet.tables.differentiation import ks_tables, sector_samples
from textnet.tables.histograms import diff_tables, histogram_table
from textnet.tables.measures import long_table, measure_tables, measures_document
from textnet.tables.summary import summary_table
from textnet.textmetrics import author_features, build_corpus, compute_bundle
from textnet.utils import TableBuilder, create_error_report, sha256_file, write_json

logger = logging.getLogger(__name__)

ListResult = namedtuple("ListResult", ["name", "features", "partition", "diffs"])

LOG_LEVELS = ("DEBUG", "INFO", "WARNING", "ERROR")


@contextmanager
def stage(name, list_name=None):
    """
    Logs a pipeline stage and tags any TextnetError raised inside it with the stage.
    File system and linear algebra failures become OutputError and NumericalError.
    """

    label = name if list_name is None else "{}/{}".format(list_name, name)
    logger.info("%s started", label)
    try:
        try:
            yield
        except OSError as e:
            raise OutputError(e.filename or "", e.strerror or str(e)) from e
        except np.linalg.LinAlgError as e:
            raise NumericalError(str(e)) from e
    except TextnetError as e:
        if e.stage is None:
            e.stage = label
            logger.error("%s failed: %s", label, e)
        raise
    logger.info("%s finished", label)


def _remove(path):
    if os.path.isfile(path):
        os.remove(path)


def features_table(features):
    body = TableBuilder(caption="Per-author features")
    body.add_columns(["author"] + list(features.columns))
    for author, row in zip(features.authors, features.values):
        body.add_row(author, list(row))
    return body


def _histograms(store, partition, lex, strip_quotes):
    pairs = {}
    diffs = {}
    for scope in SCOPES:
        corpus = build_corpus(store, partition, scope, strip_quotes)
        if not len(corpus):
            continue
        for word_class in WORD_CLASSES:
            try:
                pair = build_histograms(corpus, lex, word_class)
            except EmptyClass:
                logger.debug("no words of class %s in %s", word_class, scope)
                continue
            pairs[(word_class, scope)] = pair
            diffs[(word_class, scope)] = (cumulative_positive_difference(pair), crossing_length(pair))
    return pairs, diffs


def analyze_list(source, config, lex):
    """
    Full analysis of one list, written to its own subdirectory of the output
    directory. A failure leaves the FAILED marker next to the files already written.

    : param ListSource source: the list
    : param RunConfig config: run settings
    : param Lexicon lex: loaded resources
    """

    directory = os.path.join(config.out, source.name)
    name = source.name
    try:
        with stage("prepare", name):
            os.makedirs(directory, exist_ok=True)
            _remove(os.path.join(directory, FAILED_MARKER))

        with stage("ingest", name):
            store = truncate(load_store(source.path, source.format), config.limit)

        with stage("network", name):
            net = build_information_network(store)
            if config.direction == STATUS:
                net = invert_to_status_network(net)
            metrics = compute_vertex_metrics(net)
            write_edge_list(net, os.path.join(directory, "network_edges.tsv"))
            write_network_json(net, metrics, os.path.join(directory, "network.json"))

        with stage("partition", name):
            partition = partition_by_strength(metrics, config.f_hub, config.f_intermediary)
            write_partition_csv(partition, metrics, os.path.join(directory, "partition.csv"))

        with stage("summary", name):
            summary = summary_table(name, list_summary(store, partition))
            write_table(summary, directory, "summary")

        with stage("textmetrics", name):
            bundles = {}
            for scope in SCOPES:
                corpus = build_corpus(store, partition, scope, config.strip_quotes)
                if len(corpus):
                    bundles[scope] = compute_bundle(corpus, lex)
            measures = measure_tables(bundles)
            for table_name, body in measures.items():
                write_table(body, directory, table_name)
            write_table(long_table(name, measures), directory, "measures")
            write_json(os.path.join(directory, "measures.json"), measures_document(measures))

        with stage("features", name):
            features = author_features(store, partition, metrics, lex, config.strip_quotes)
            write_table(features_table(features), directory, "features")

        with stage("correlation", name):
            correlations = correlation_tables(features, partition)
            for table_name, body in correlations.items():
                write_table(body, directory, table_name)

        with stage("pca", name):
            components = pca_tables(
                features, partition, config.pca_mode, config.components, config.loading_threshold
            )
            for table_name, body in components.items():
                write_table(body, directory, table_name)

        with stage("histograms", name):
            pairs, diffs = _histograms(store, partition, lex, config.strip_quotes)
            for (word_class, scope), pair in sorted(pairs.items()):
                write_table(histogram_table(name, pair, scope), directory, "hist_{}_{}".format(word_class, scope))

        with stage("rendering", name):
            bodies = [summary] + list(measures.values()) + list(correlations.values()) + list(components.values())
            write_rendering(bodies, os.path.join(directory, "tables.txt"))
    except TextnetError as e:
        _report(directory, e)
        raise
    return ListResult(name=name, features=features, partition=partition, diffs=diffs)


def _report(directory, error):
    try:
        create_error_report(directory, error.stage, error)
    except OSError as e:
        logger.error("FAILED marker can't be written to %s: %s", directory, e)


def _artifacts(out):
    listing = []
    for root, _, files in os.walk(out):
        for filename in files:
            path = os.path.join(root, filename)
            relative = os.path.relpath(path, out).replace(os.sep, "/")
            if relative in (RUN_MANIFEST, FAILED_MARKER):
                continue
            listing.append({"path": relative, "sha256": sha256_file(path)})
    return sorted(listing, key=lambda item: item["path"])


def run(config):
    """
    Runs the whole analysis and returns the exit status. Lists are analysed
    concurrently up to config.workers; the manifest is written once, last.

    : param RunConfig config: validated run settings
    """

    try:
        with stage("prepare"):
            os.makedirs(config.out, exist_ok=True)
            _remove(os.path.join(config.out, FAILED_MARKER))
            _remove(os.path.join(config.out, RUN_MANIFEST))

        with stage("load_lexicon"):
            lex = load_manifest(config.lexicon)

        results = []
        failure = None
        with ThreadPoolExecutor(max_workers=config.workers) as pool:
            futures = [pool.submit(analyze_list, source, config, lex) for source in config.lists]
            for future in futures:
                try:
                    results.append(future.result())
                except TextnetError as e:
                    failure = failure or e
        if failure is not None:
            raise failure

        names = [result.name for result in results]
        with stage("differentiation"):
            samples = {
                measure: {r.name: sector_samples(r.features, r.partition, column) for r in results}
                for measure, column in KS_MEASURES
            }
            grids = ks_tables(samples)
            for table_name, body in grids.items():
                write_table(body, config.out, table_name)

        with stage("histdiff"):
            diffs = diff_tables({r.name: r.diffs for r in results}, names)
            for table_name, body in diffs.items():
                write_table(body, config.out, table_name)

        with stage("rendering"):
            write_rendering(list(grids.values()) + list(diffs.values()), os.path.join(config.out, "tables.txt"))

        with stage("manifest"):
            write_json(os.path.join(config.out, RUN_MANIFEST), {
                "package": PACKAGE_NAME,
                "version": __version__,
                "config": config.to_record(),
                "lexicon": dict(lex.hashes),
                "artifacts": _artifacts(config.out)
            })
    except TextnetError as e:
        _report(config.out, e)
        click.echo("FAILED at stage {}: {}".format(e.stage, e), err=True)
        return e.exit_code
    return EXIT_OK


def validate(config):
    """
    Dry run: lists every problem with input paths and lexicon resources without
    computing anything.

    : param RunConfig config: run settings
    """

    problems = []
    if not config.lists:
        problems.append("No lists configured.")
    for source in config.lists:
        if not os.path.isfile(source.path) or not os.access(source.path, os.R_OK):
            problems.append("Input '{}' of list '{}' can't be read.".format(source.path, source.name))
    if os.path.exists(config.out) and not os.path.isdir(config.out):
        problems.append("Output '{}' is not a directory.".format(config.out))

    try:
        paths, hashes = read_manifest(config.lexicon)
    except ResourceError as e:
        problems.append(str(e))
        if not os.path.exists(config.lexicon):
            problems.append("Build the lexicon with `textnet build-lexicon --out {}`.".format(os.path.dirname(config.lexicon)))
        return problems
    for name in LEXICON_RESOURCES:
        if not os.path.exists(paths[name]):
            problems.append("Resource '{}' wasn't found.".format(paths[name]))
    try:
        for name in check_hashes(paths, hashes):
            problems.append("Resource '{}' doesn't match its manifest hash.".format(paths[name]))
    except ResourceError as e:
        problems.append(str(e))
    return problems


def collect_problems(path=None, overrides=None):
    try:
        config = create_config(overrides, path=path)
    except ConfigError as e:
        return [str(e)]
    return validate(config)


def _configure_logging(level):
    level = (level or os.environ.get(LOGLEVEL_ENV) or "WARNING").upper()
    logging.basicConfig(
        level=getattr(logging, level, logging.WARNING),
        format="%(asctime)s %(levelname)s %(name)s: %(message)s"
    )


@click.group()
@click.version_option(version=__version__, prog_name=PACKAGE_NAME)
@click.option("--log-level", type=click.Choice(LOG_LEVELS, case_sensitive=False), default=None,
              help="Logging level (default from TEXTNET_LOGLEVEL, else WARNING)")
def cli(log_level):
    """
    Interaction networks and text measures of mailing lists.
    """

    _configure_logging(log_level)


def _on_off(value):
    if value is None:
        return None
    return value == "on"


def _overrides(**options):
    options["strip_quotes"] = _on_off(options.get("strip_quotes"))
    return {k: v for k, v in options.items() if v is not None}


def _config_or_exit(config_path, overrides):
    try:
        return create_config(overrides, path=config_path)
    except ConfigError as e:
        click.echo("Error: {}".format(e), err=True)
        sys.exit(e.exit_code)


@cli.command("analyze")
@click.option("--config", "config_path", type=click.Path(), required=True, help="INI run configuration")
@click.option("--limit", type=int, default=None, help="Messages kept per list")
@click.option("--f-hub", "f_hub", type=float, default=None, help="Fraction of hubs")
@click.option("--f-intermediary", "f_intermediary", type=float, default=None, help="Fraction of intermediaries")
@click.option("--strip-quotes", type=click.Choice(["on", "off"]), default=None, help="Drop quoted lines")
@click.option("--out", type=click.Path(), default=None, help="Output directory")
@click.option("--lexicon", type=click.Path(), default=None, help="Lexicon manifest")
@click.option("--workers", type=int, default=None, help="Lists analysed concurrently")
@click.option("--pca-mode", "pca_mode", type=click.Choice(["correlation", "covariance"]), default=None)
@click.option("--direction", type=click.Choice([INFORMATION, STATUS]), default=None)
@click.option("--components", type=int, default=None, help="Principal components reported")
@click.option("--loading-threshold", "loading_threshold", type=float, default=None)
@click.option("--seed", type=int, default=None)
def analyze_command(config_path, **options):
    """
    Runs the full analysis of every configured list.
    """

    config = _config_or_exit(config_path, _overrides(**options))
    status = run(config)
    if status == EXIT_OK:
        click.echo("Results written to {}".format(config.out))
    sys.exit(status)


@cli.command("validate")
@click.option("--config", "config_path", type=click.Path(), required=True, help="INI run configuration")
def validate_command(config_path):
    """
    Checks a configuration without running it.
    """

    problems = collect_problems(config_path)
    for problem in problems:
        click.echo(problem)
    if problems:
        sys.exit(EXIT_CONFIG)
    click.echo("Configuration is valid.")


@cli.command("ingest")
@click.option("--format", "fmt", type=click.Choice(["mbox", "jsonl"]), default="mbox")
@click.option("--in", "in_path", type=click.Path(), required=True, help="Archive to read")
@click.option("--out", "out_path", type=click.Path(), required=True, help="JSON-lines dump to write")
@click.option("--limit", type=int, default=None, help="Keep only the first messages")
def ingest_command(fmt, in_path, out_path, limit):
    """
    Dumps an archive as canonical JSON lines.
    """

    try:
        store = load_store(in_path, fmt)
        if limit is not None:
            store = truncate(store, limit)
    except TextnetError as e:
        click.echo("Error: {}".format(e), err=True)
        sys.exit(e.exit_code)
    with open(out_path, "wb") as sink:
        dump_jsonl(store, sink)
    click.echo("{} messages written to {}".format(len(store), out_path))


@cli.command("build-lexicon")
@click.option("--out", "out_dir", type=click.Path(), default=LEXICON_HOME, show_default=True,
              help="Directory receiving the resources and their manifest")
@click.option("--heldout-every", "heldout_every", type=int, default=HELDOUT_EVERY, show_default=True,
              help="Every n-th Brown sentence is held out of the tag lexicon")
def build_lexicon_command(out_dir, heldout_every):
    """
    Builds the lexicon resources from the nltk corpora and reports the tagger
    accuracy on the held-out gold sample.
    """

    try:
        manifest = build_lexicon(out_dir, heldout_every=heldout_every)
        gold = read_gold_sample(os.path.join(out_dir, GOLD_FILE))
        accuracy = tag_accuracy(load_manifest(manifest), gold)
    except TextnetError as e:
        click.echo("Error: {}".format(e), err=True)
        sys.exit(e.exit_code)
    except OSError as e:
        click.echo("Error: {}".format(e), err=True)
        sys.exit(EXIT_RESOURCE)
    click.echo("Lexicon manifest written to {}".format(manifest))
    click.echo("Tag accuracy on {} held-out tokens: {:.3f}".format(
        sum(1 for pairs in gold for word, _ in pairs if not is_punctuation(word)), accuracy
    ))
