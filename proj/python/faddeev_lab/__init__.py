"""Python access to the faddeev_lab solver, checks and oracles."""

import json

from ._core import (
    FaddeevError,
    SuiteReport,
    check,
    check_suites,
    evolve_free,
    fit_decay,
    oracle,
    oracles,
    simulate,
)

__all__ = [
    "FaddeevError",
    "SuiteReport",
    "check",
    "check_suites",
    "evolve_free",
    "fit_decay",
    "oracle",
    "oracles",
    "run",
    "simulate",
]


def run(config=None, **sections):
    """Run the solver. `config` is a dict (or JSON string) in the CLI config format."""
    if config is None:
        config = {}
    if isinstance(config, str):
        config = json.loads(config)
    merged = dict(config)
    merged.update(sections)
    return simulate(json.dumps(merged))
