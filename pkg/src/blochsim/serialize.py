"""Deterministic JSON/CSV emission and complex-matrix codecs.

Floats are printed with 12 significant digits and dictionary keys keep
insertion order, so identical inputs produce byte-identical artifacts.
Complex scalars travel as [re, im] pairs.
"""

from __future__ import annotations

import json

import numpy as np

from .bloch import DensityMatrix
from .collapse import ProcessTrace
from .errors import ContractError
from .generators import GeneratorSet
from .sampler import OracleReport, TrialReport
from .simplex import MeasurementSimplex


def format_float(x: float) -> str:
    x = float(x)
    if not np.isfinite(x):
        raise ContractError(f"cannot serialize non-finite number {x!r}")
    return f"{x:.12g}"


def _write(obj, parts: list[str], indent: int) -> None:
    pad = "  " * indent
    inner = "  " * (indent + 1)
    if isinstance(obj, dict):
        if not obj:
            parts.append("{}")
            return
        parts.append("{\n")
        for i, (key, value) in enumerate(obj.items()):
            parts.append(f"{inner}{json.dumps(str(key))}: ")
            _write(value, parts, indent + 1)
            parts.append(",\n" if i < len(obj) - 1 else "\n")
        parts.append(pad + "}")
    elif isinstance(obj, str):
        parts.append(json.dumps(obj))
    elif isinstance(obj, (bool, np.bool_)):
        parts.append("true" if obj else "false")
    elif obj is None:
        parts.append("null")
    elif isinstance(obj, (int, np.integer)):
        parts.append(str(int(obj)))
    elif isinstance(obj, (float, np.floating)):
        parts.append(format_float(obj))
    elif isinstance(obj, (list, tuple, np.ndarray)):
        items = list(obj)
        if not items:
            parts.append("[]")
            return
        parts.append("[")
        for i, item in enumerate(items):
            _write(item, parts, indent)
            if i < len(items) - 1:
                parts.append(", ")
        parts.append("]")
    else:
        raise ContractError(f"cannot serialize object of type {type(obj).__name__}")


def dumps(obj) -> str:
    """Deterministic JSON text (no trailing newline)."""
    parts: list[str] = []
    _write(obj, parts, 0)
    return "".join(parts)


def complex_to_pair(z: complex) -> list[float]:
    return [float(z.real), float(z.imag)]


def vector_to_pairs(v: np.ndarray) -> list[list[float]]:
    return [complex_to_pair(z) for z in np.asarray(v, dtype=np.complex128)]


def matrix_to_pairs(m: np.ndarray) -> list[list[list[float]]]:
    return [vector_to_pairs(row) for row in np.asarray(m, dtype=np.complex128)]


def pairs_to_vector(pairs) -> np.ndarray:
    out = np.empty(len(pairs), dtype=np.complex128)
    for i, entry in enumerate(pairs):
        re, im = entry
        out[i] = complex(float(re), float(im))
    return out


def pairs_to_matrix(rows) -> np.ndarray:
    m = np.array([pairs_to_vector(row) for row in rows])
    if m.ndim != 2:
        raise ValueError("matrix rows have inconsistent lengths")
    return m


def trial_report_to_dict(report: TrialReport) -> dict:
    return {
        "n_trials": report.n_trials,
        "exact_probs": report.exact_probs.weights,
        "counts": report.counts,
        "empirical_freqs": report.empirical_freqs,
        "chi_square": report.chi_square,
        "max_abs_deviation": report.max_abs_deviation,
    }


def trial_report_to_csv(report: TrialReport) -> str:
    """One row per outcome; exact probability always beside the frequency."""
    lines = ["outcome,exact_prob,count,empirical_freq,chi_square,max_abs_deviation"]
    chi = format_float(report.chi_square)
    dev = format_float(report.max_abs_deviation)
    for i in range(report.exact_probs.dim):
        lines.append(
            f"{i + 1},{format_float(report.exact_probs.weights[i])},"
            f"{int(report.counts[i])},{format_float(report.empirical_freqs[i])},"
            f"{chi},{dev}"
        )
    return "\n".join(lines) + "\n"


def simplex_geometry_to_dict(s: MeasurementSimplex) -> dict:
    return {"vertices": [row for row in s.vertices], "total_measure": s.total_measure}


def density_to_pairs(d: DensityMatrix) -> list:
    return matrix_to_pairs(d.entries)


def process_trace_to_dict(trace: ProcessTrace) -> dict:
    return {
        "outcome": trace.outcome + 1,
        "lambda": trace.lambda_point.weights,
        "stages": [
            {
                "label": s.label,
                "bloch": s.vector.coords,
                "density": density_to_pairs(s.density),
            }
            for s in trace.stages
        ],
    }


def oracle_report_to_dict(report: OracleReport) -> dict:
    return {
        "n_samples": report.n_samples,
        "counts": report.counts,
        "fractions": report.fractions,
        "ties": report.ties,
        "agreements": report.agreements,
        "disagreements": report.disagreements,
    }


def generator_set_to_dict(g: GeneratorSet) -> dict:
    """JSON form of a generator set for cross-implementation comparison."""
    return {"dim": g.dim, "matrices": [matrix_to_pairs(m) for m in g.matrices]}


def generator_set_from_dict(data: dict) -> GeneratorSet:
    mats = np.array([pairs_to_matrix(m) for m in data["matrices"]])
    return GeneratorSet(dim=int(data["dim"]), matrices=mats)
