"""Hierarchical stochastic graphlet embedding."""

import json

from ._hsge import (
    Config,
    Dataset,
    DegenerateModelError,
    FormatError,
    Graph,
    HsgeError,
    ParameterError,
    ParseError,
    RangeError,
    StateError,
    dataset_from_graphs,
    embed,
    load_dataset,
    save_json_dataset,
)
from . import _hsge

__all__ = [
    "Config",
    "Dataset",
    "DegenerateModelError",
    "FormatError",
    "Graph",
    "HsgeError",
    "ParameterError",
    "ParseError",
    "RangeError",
    "StateError",
    "dataset_from_graphs",
    "dataset_stats",
    "embed",
    "evaluate",
    "hierarchy",
    "load_dataset",
    "save_json_dataset",
]


def evaluate(dataset, config, folds=10, repetitions=1, seed=0, c_grid=None, jobs=0):
    """Cross-validation (or hold-out, when the dataset has a split) report as a dict."""
    return json.loads(_hsge.evaluate_json(dataset, config, folds, repetitions, seed, c_grid, jobs))


def hierarchy(graph, levels=2, ratio=0.5, delta=0.0):
    """Girvan-Newman hierarchy of one graph as a dict with per-level graphs."""
    return json.loads(_hsge.hierarchy_json(graph, levels, ratio, delta))


def dataset_stats(dataset):
    return json.loads(dataset.stats_json())
