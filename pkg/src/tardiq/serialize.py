"""Wire formats for the CLI: density-matrix JSON, tomography-record JSON,
and delimited sweep tables.

A density matrix serializes as {"dims": [...], "data": [[re, im], ...]} with
the entries row-major; floats round-trip exactly through the JSON layer. All
writers go through an atomic temp-file + rename so a failing command never
leaves a partial output behind.
"""

from __future__ import annotations

import json
import os
import tempfile
from typing import Sequence

import numpy as np

from .hilbert import DensityMatrix
from .tomography import MeasurementSetting, TomographyRecord


def atomic_write_text(path: str, text: str) -> None:
    """Write text to path via a temp file in the same directory + rename."""
    directory = os.path.dirname(os.path.abspath(path))
    fd, tmp = tempfile.mkstemp(dir=directory, prefix=".tmp-", suffix="~")
    try:
        with os.fdopen(fd, "w") as fh:
            fh.write(text)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


def density_matrix_to_json(dm: DensityMatrix, extra: dict | None = None) -> str:
    data = [[float(z.real), float(z.imag)] for z in dm.matrix.reshape(-1)]
    doc: dict = {"dims": list(dm.dims), "data": data}
    if extra:
        doc.update(extra)
    return json.dumps(doc, indent=2) + "\n"


def density_matrix_from_json(text: str) -> DensityMatrix:
    doc = json.loads(text)
    dims = tuple(int(d) for d in doc["dims"])
    d = int(np.prod(dims))
    data = doc["data"]
    if len(data) != d * d:
        raise ValueError(f"expected {d*d} entries for dims {dims}, got {len(data)}")
    flat = np.array([complex(re, im) for re, im in data])
    return DensityMatrix(dims, flat.reshape(d, d))


def write_density_matrix(path: str, dm: DensityMatrix, extra: dict | None = None) -> None:
    atomic_write_text(path, density_matrix_to_json(dm, extra))


def read_density_matrix(path: str) -> DensityMatrix:
    with open(path) as fh:
        return density_matrix_from_json(fh.read())


def record_to_json(record: TomographyRecord) -> str:
    settings = []
    for setting, counts in zip(record.settings, record.counts):
        counts_list = [
            int(c) if float(c).is_integer() else float(c) for c in counts
        ]
        settings.append(
            {"gate_a": setting.gate_a, "gate_b": setting.gate_b, "counts": counts_list}
        )
    return json.dumps({"shots": record.shots, "settings": settings}, indent=2) + "\n"


def record_from_json(text: str) -> TomographyRecord:
    doc = json.loads(text)
    settings = tuple(
        MeasurementSetting(s["gate_a"], s["gate_b"]) for s in doc["settings"]
    )
    counts = np.array([s["counts"] for s in doc["settings"]], dtype=float)
    return TomographyRecord(settings=settings, counts=counts, shots=int(doc["shots"]))


def write_record(path: str, record: TomographyRecord) -> None:
    atomic_write_text(path, record_to_json(record))


def read_record(path: str) -> TomographyRecord:
    with open(path) as fh:
        return record_from_json(fh.read())


def format_csv(header: Sequence[str], rows: Sequence[Sequence[float]]) -> str:
    """CSV with a mandatory header; floats printed to 12 significant digits."""
    lines = [",".join(header)]
    for row in rows:
        lines.append(",".join(f"{float(x):.12g}" for x in row))
    return "\n".join(lines) + "\n"


def write_csv(path: str, header: Sequence[str], rows: Sequence[Sequence[float]]) -> None:
    atomic_write_text(path, format_csv(header, rows))
