"""Spectral expansions on the disc and ball (Python bindings)."""

import json as _json

from ._core import (
    CoeffTensor,
    NumericalError,
    ParameterError,
    UsageError,
    asymmetry_S_ex1,
    asymmetry_beta0,
    build_Dr,
    error_report,
    expand,
    expm_apply,
    gauss_jacobi,
    jacobi_eval,
    propagate,
    radial_diff_quadrature,
)
from ._core import run_example as _run_example


def run_example(example):
    """Run a CLI example and return its report as a dict."""
    return _json.loads(_run_example(example))


__all__ = [
    "CoeffTensor",
    "NumericalError",
    "ParameterError",
    "UsageError",
    "asymmetry_S_ex1",
    "asymmetry_beta0",
    "build_Dr",
    "error_report",
    "expand",
    "expm_apply",
    "gauss_jacobi",
    "jacobi_eval",
    "propagate",
    "radial_diff_quadrature",
    "run_example",
]
