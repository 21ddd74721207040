"""Honest and adaptive confidence sets for sparse linear regression."""

from . import _core
from ._core import *  # noqa: F401,F403

__version__ = "0.1.0"


def _as_strings(overrides):
    out = {}
    for key, value in (overrides or {}).items():
        if isinstance(value, bool):
            value = "true" if value else "false"
        out[key] = str(value)
    return out


def simulate(preset="desk", **overrides):
    """Aggregate metrics for a preset; keyword arguments override config keys
    (dotted keys such as ``noise.variance`` can be passed via ``**{...}``)."""
    return _core.simulate(preset, _as_strings(overrides))


def run_replications(preset="desk", **overrides):
    """Per-replication records for a preset with config overrides."""
    return _core.run_replications(preset, _as_strings(overrides))
