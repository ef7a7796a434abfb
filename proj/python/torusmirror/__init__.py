"""Mirror symmetry checks for gerby deformations of complex tori."""

import json

from ._core import (
    Error,
    b_transform,
    dhym_phase,
    extract_period_matrix,
    gcs_defects,
    gcs_from_complex,
    gcs_from_kahler,
    is_fukaya_object,
    is_holomorphic,
    mirror,
    mirror_period,
    mirror_summary,
    pfaffian,
    phase_mod_pi,
    slag_phase,
    suite_names,
    verify_zero_connection,
)
from ._core import run_suite as _run_suite


def run_suite(config, suite="all"):
    """Run a verification suite; `config` is a dict or a JSON string. Returns the report as a dict."""
    text = config if isinstance(config, str) else json.dumps(config)
    return json.loads(_run_suite(text, suite))


__all__ = [
    "Error",
    "b_transform",
    "dhym_phase",
    "extract_period_matrix",
    "gcs_defects",
    "gcs_from_complex",
    "gcs_from_kahler",
    "is_fukaya_object",
    "is_holomorphic",
    "mirror",
    "mirror_period",
    "mirror_summary",
    "pfaffian",
    "phase_mod_pi",
    "run_suite",
    "slag_phase",
    "suite_names",
    "verify_zero_connection",
]
