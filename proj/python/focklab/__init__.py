"""Fock-space norms, distances and verification suites."""

from ._focklab import (
    EntireFn,
    ParseError,
    __version__,
    distance,
    energy,
    explorer_ids,
    incomplete_gamma,
    kernel,
    norm,
    run_explorer,
    run_suite,
    suite_ids,
    supnorm,
)

__all__ = [
    "EntireFn",
    "ParseError",
    "__version__",
    "distance",
    "energy",
    "explorer_ids",
    "incomplete_gamma",
    "kernel",
    "norm",
    "run_explorer",
    "run_suite",
    "suite_ids",
    "supnorm",
]
