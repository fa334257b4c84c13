"""Report serialization with a stable key order.

JSON output is deterministic for fixed inputs: keys are emitted in schema
order and floats use Python's shortest-repr formatting, so single-thread
reruns are byte-identical.  Timings are only attached on request since
they vary run to run.
"""

from __future__ import annotations

import json

from .counting import CountReport
from .solver import EigenpairSet

SCHEMA_VERSION = 1


def _complex_pairs(values):
    return [[float(v.real), float(v.imag)] for v in values]


def _config_dict(report: CountReport):
    return {
        "center": [float(report.disk.center.real), float(report.disk.center.imag)],
        "radius": float(report.disk.radius),
        "q": int(report.q),
        "rng_seed": int(report.rng_seed),
    }


def count_report_dict(report: CountReport, include_timings=False):
    doc = {
        "schema_version": SCHEMA_VERSION,
        "s": int(report.s),
        "s0": int(report.s0),
        "s1": int(report.s1),
        "mu_eigs": _complex_pairs(report.mu_eigs),
        "warnings": [
            f"counting-matrix eigenvalue {v.real:.6g}{v.imag:+.6g}i has real part "
            f"within the boundary band of 0.5" for v in report.boundary_warnings
        ],
        "config": _config_dict(report),
    }
    if include_timings:
        doc["timings"] = {k: float(v) for k, v in report.timings_ms.items()}
    return doc


def eigenpairs_dict(result: EigenpairSet, include_timings=False, include_vectors=False):
    report = result.count_report
    doc = {
        "schema_version": SCHEMA_VERSION,
        "s": int(report.s),
        "s0": int(report.s0),
        "s1": int(report.s1),
        "converged": bool(result.converged),
        "iterations_used": int(result.iterations_used),
        "eigenvalues": _complex_pairs(result.eigenvalues),
        "residuals": [float(r) for r in result.residuals],
        "warnings": [
            f"counting-matrix eigenvalue {v.real:.6g}{v.imag:+.6g}i has real part "
            f"within the boundary band of 0.5" for v in report.boundary_warnings
        ],
        "config": _config_dict(report),
    }
    if include_vectors:
        doc["vectors"] = [
            _complex_pairs(result.vectors[:, i]) for i in range(result.vectors.shape[1])
        ]
    if include_timings:
        doc["timings"] = {k: float(v) for k, v in report.timings_ms.items()}
    return doc


def to_json(doc):
    """Serialize with stable key order (insertion order, never re-sorted)."""
    return json.dumps(doc, indent=2, sort_keys=False) + "\n"
