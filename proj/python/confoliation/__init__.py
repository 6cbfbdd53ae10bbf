"""Foliation-to-contact deformation verifier.

Thin Python layer over the C++ core: profile constructors, the verification
pipeline, plane-field slices, and pointwise contact margins.
"""

import json as _json

from ._core import (  # noqa: F401
    ScalarProfile,
    contact_margin,
    make_delta,
    make_f,
    make_lambda,
    slice_svg,
    smooth_step,
    verify_json,
)

__all__ = [
    "ScalarProfile",
    "contact_margin",
    "make_delta",
    "make_f",
    "make_lambda",
    "slice_svg",
    "smooth_step",
    "verify",
    "verify_json",
]


def verify(config=None):
    """Run the verification pipeline for a config dict; returns the report dict."""
    return _json.loads(verify_json(_json.dumps(config or {})))
