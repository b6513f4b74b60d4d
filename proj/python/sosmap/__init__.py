"""Python interface to the sosmap core."""

import json

from ._core import *  # noqa: F401,F403
from ._core import (
    ESCAPE_BOUND,
    BoundaryLaw,
    Field,
    SosmapError,
    State,
    _boundary_law_json,
    _run_preset,
    _spectral_json,
    _sweep_csv,
    make_params,
)


def run_preset(name):
    """Run a named preset and return its report as a dict."""
    return json.loads(_run_preset(name))


def spectral_report(params):
    return json.loads(_spectral_json(params))


def boundary_law_report(kind="left", theta=0.5, k=2, field="geometric", rho=1.0, trunc_n=400, imax=5):
    return json.loads(_boundary_law_json(kind, theta, k, field, rho, trunc_n, imax))


def sweep_csv(k, tau, field, y0_range, x1_range, n_steps=1000, workers=1):
    """Positivity-horizon raster as CSV text; ranges are (min, max, count)."""
    return _sweep_csv(k, tau, field, tuple(y0_range), tuple(x1_range), n_steps, workers)


__all__ = [
    "ESCAPE_BOUND",
    "BoundaryLaw",
    "Field",
    "SosmapError",
    "State",
    "boundary_law_report",
    "make_params",
    "run_preset",
    "spectral_report",
    "sweep_csv",
]
