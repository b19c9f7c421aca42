"""Author name disambiguation on co-authorship graphs."""

import json

from ._core import (
    ArgumentError,
    AuthorMention,
    BcubedScores,
    Block,
    BlockSet,
    Clustering,
    CoauthorGraph,
    DataIntegrityError,
    GoldStandard,
    MalformedMention,
    ParseError,
    RawRecord,
    UndefinedModularity,
    UnknownIdError,
    block_scores,
    build_blocks,
    build_gold_standard,
    cluster_block,
    corpus_scores,
    count_comparisons,
    generate_synthetic,
    item_scores,
    louvain,
    modularity,
    normalize_name,
    parse_dblp,
    parse_mention,
    read_dblp,
    read_records,
    record_from_json,
    refine_clustering,
    render_report,
    sample_blocks,
    to_dblp_xml,
    write_records,
)
from . import _core


def run_experiment(graph, blocks, **options):
    """Cluster and score the selected blocks. Returns the report as a dict."""
    return json.loads(_core.run_experiment(graph, blocks, **options))


def run_common_names(graph, blocks, **options):
    """Louvain refinement of large blocks. Returns the report as a dict."""
    return json.loads(_core.run_common_names(graph, blocks, **options))


__all__ = [name for name in dir() if not name.startswith("_") and name != "json"]
