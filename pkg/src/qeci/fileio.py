"""On-disk formats: density files, joint tables, marginal rows, CSV emission."""

from __future__ import annotations

import json
from typing import Any

import numpy as np

from .causal import JointDistribution
from .coupling import MarginalSet
from .density import DensityMatrix, validate_density


class FileFormatError(ValueError):
    """Input file does not parse as the expected document."""


def _load_json(path: str) -> Any:
    try:
        with open(path, "r", encoding="utf-8") as fh:
            return json.load(fh)
    except OSError as exc:
        raise FileFormatError(f"cannot read {path}: {exc}") from exc
    except json.JSONDecodeError as exc:
        raise FileFormatError(f"{path} is not valid JSON: {exc}") from exc


def load_density_file(path: str, tol: float = 1e-9) -> DensityMatrix:
    """Parse a density file: {"dims": [...], "matrix": [[[re, im], ...], ...]}.

    Validation failures (hermiticity, trace, positivity) propagate as the
    density module's exceptions; structural problems raise FileFormatError.
    """
    doc = _load_json(path)
    if not isinstance(doc, dict) or "dims" not in doc or "matrix" not in doc:
        raise FileFormatError(f"{path}: expected an object with 'dims' and 'matrix'")
    dims = doc["dims"]
    raw = doc["matrix"]
    try:
        mat = np.array(
            [[complex(cell[0], cell[1]) for cell in row] for row in raw], dtype=complex
        )
    except (TypeError, ValueError, IndexError) as exc:
        raise FileFormatError(f"{path}: matrix entries must be [re, im] pairs") from exc
    if mat.ndim != 2:
        raise FileFormatError(f"{path}: matrix rows have unequal lengths")
    return validate_density(mat, dims, tol)


def density_payload(rho: DensityMatrix) -> dict:
    return {
        "dims": list(rho.dims),
        "matrix": [
            [[float(cell.real), float(cell.imag)] for cell in row] for row in rho.mat
        ],
    }


def dump_density(rho: DensityMatrix) -> str:
    return json.dumps(density_payload(rho), indent=2)


def load_table_file(path: str) -> JointDistribution:
    """Parse a joint probability table: a JSON array of equal-length rows."""
    doc = _load_json(path)
    try:
        table = np.array(doc, dtype=float)
    except (TypeError, ValueError) as exc:
        raise FileFormatError(f"{path}: expected a rectangular array of numbers") from exc
    if table.ndim != 2:
        raise FileFormatError(f"{path}: expected a 2-D table, got shape {table.shape}")
    return JointDistribution.from_table(table)


def load_marginal_rows(path: str) -> MarginalSet:
    """Parse marginal rows: a JSON array of probability vectors."""
    doc = _load_json(path)
    if not isinstance(doc, list) or not all(isinstance(r, list) for r in doc):
        raise FileFormatError(f"{path}: expected an array of probability rows")
    if len(doc) < 2:
        raise FileFormatError(f"{path}: need at least 2 rows, got {len(doc)}")
    return MarginalSet.from_rows(doc)


def table_to_csv(joint: JointDistribution) -> str:
    """Joint table as CSV with a y-label header row; LF line endings."""
    table = joint.table
    header = ",".join(f"y{j}" for j in range(table.shape[1]))
    lines = [header]
    for row in table:
        lines.append(",".join(f"{v:.12g}" for v in row))
    return "\n".join(lines) + "\n"
