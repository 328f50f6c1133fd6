"""Benchmark harness, file formats and command-line interface."""

from .harness import ExperimentError, ExperimentSpec, ResultRow, detect, emit_csv, run_experiment
from .io import EdgeListError, LoadedGraph, load_edge_list, read_partition, write_partition

__all__ = [
    "EdgeListError",
    "ExperimentError",
    "ExperimentSpec",
    "LoadedGraph",
    "ResultRow",
    "detect",
    "emit_csv",
    "load_edge_list",
    "read_partition",
    "run_experiment",
    "write_partition",
]
