"""CSV and JSON output for sweeps, distributions and reports."""

import csv
import io
import logging
from pathlib import Path
from typing import Iterable, List, Optional, Sequence, Union

import numpy as np
from pydantic import BaseModel

from models.quantum import NumberDistribution, PhaseDistribution

logger = logging.getLogger(__name__)


def format_float(value: float) -> str:
    """Shortest text that round-trips a double."""
    return f"{float(value):.17g}"


def render_csv(columns: Sequence[str], rows: Iterable[Sequence[float]]) -> str:
    buffer = io.StringIO()
    writer = csv.writer(buffer, lineterminator="\n")
    writer.writerow(columns)
    for row in rows:
        if len(row) != len(columns):
            raise ValueError(f"row has {len(row)} fields, header has {len(columns)}")
        writer.writerow([format_float(v) for v in row])
    return buffer.getvalue()


def write_csv(
    columns: Sequence[str],
    rows: Iterable[Sequence[float]],
    path: Optional[Union[str, Path]] = None,
) -> str:
    """Render rows under a single header; write them to path when given.

    Returns the rendered text either way.
    """
    text = render_csv(columns, rows)
    if path is not None:
        target = Path(path)
        target.parent.mkdir(parents=True, exist_ok=True)
        target.write_text(text)
        logger.info(f"Wrote {text.count(chr(10)) - 1} rows to {target}")
    return text


def number_rows(p: NumberDistribution) -> List[List[float]]:
    return [[float(n), float(v)] for n, v in enumerate(p.p)]


def phase_rows(P: PhaseDistribution) -> List[List[float]]:
    return [[float(t), float(v)] for t, v in zip(P.grid, P.values)]


def write_number_csv(p: NumberDistribution, path: Optional[Union[str, Path]] = None) -> str:
    return write_csv(["n", "p"], number_rows(p), path)


def write_phase_csv(P: PhaseDistribution, path: Optional[Union[str, Path]] = None) -> str:
    return write_csv(["theta", "P"], phase_rows(P), path)


def dump_json(report: BaseModel, path: Optional[Union[str, Path]] = None) -> str:
    """Serialize a report; NaN and infinity become null."""
    text = report.model_dump_json(indent=2)
    if path is not None:
        target = Path(path)
        target.parent.mkdir(parents=True, exist_ok=True)
        target.write_text(text + "\n")
        logger.info(f"Wrote {type(report).__name__} to {target}")
    return text


def read_csv(path: Union[str, Path]) -> tuple:
    """Header and float matrix of a CSV produced by write_csv."""
    with open(path, newline="") as f:
        reader = csv.reader(f)
        header = next(reader)
        data = np.array([[float(v) for v in row] for row in reader], dtype=float)
    return header, data
