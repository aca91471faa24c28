"""Motif Tracking Algorithm: variable-length motif discovery in time series."""

from .analysis import compare_pools, periodicity_scan
from .baseline import BaselineParams, random_projection_detect
from .engine import (
    MotifRecord,
    MtaConfig,
    RunStats,
    ThresholdMode,
    TmePolicy,
    euclidean_match,
    run_mta,
    streamline,
    track_motifs,
)
from .oracle import PlantSpec, MotifTemplate, brute_force_motifs, generate_planted
from .preprocess import TimeSeries, make_alphabet, prepare, symbolize
from .serialize import load_csv

__all__ = [
    "BaselineParams",
    "MotifRecord",
    "MotifTemplate",
    "MtaConfig",
    "PlantSpec",
    "RunStats",
    "ThresholdMode",
    "TimeSeries",
    "TmePolicy",
    "brute_force_motifs",
    "compare_pools",
    "euclidean_match",
    "generate_planted",
    "load_csv",
    "make_alphabet",
    "periodicity_scan",
    "prepare",
    "random_projection_detect",
    "run_mta",
    "streamline",
    "symbolize",
    "track_motifs",
]
