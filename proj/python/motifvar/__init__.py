"""Household variability from recurring consumption motifs."""

import json

from ._core import (
    MotifvarError,
    Partition,
    breakpoints,
    cdi,
    cluster,
    corrected_rand,
    default_config,
    generate,
    mia,
    symbolize_window,
)
from ._core import run_pipeline as _run_pipeline

__all__ = [
    "MotifvarError",
    "Partition",
    "breakpoints",
    "cdi",
    "cluster",
    "corrected_rand",
    "generate",
    "mia",
    "run",
    "symbolize_window",
]


def run(**settings):
    """Run every stage; keyword names follow the manifest keys."""
    config = json.loads(default_config())
    config.update({k: str(v) if k in ("input", "scenario", "holidays", "out_dir") else v for k, v in settings.items()})
    _run_pipeline(json.dumps(config))
