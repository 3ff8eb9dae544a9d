"""Atomic CSV / JSON artifact writers."""

from __future__ import annotations

import json
import os
import tempfile
from pathlib import Path

import numpy as np


def fmt(x: float) -> str:
    # shortest string that round-trips to the same double
    return repr(float(x))


def write_atomic(path: Path, text: str) -> Path:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    fd, tmp = tempfile.mkstemp(dir=path.parent, prefix=f".{path.name}.", suffix=".tmp")
    try:
        with os.fdopen(fd, "w", newline="\n") as fh:
            fh.write(text)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise
    return path


def csv_text(header: list[str], rows) -> str:
    lines = [",".join(header)]
    lines.extend(",".join(row) for row in rows)
    return "\n".join(lines) + "\n"


def matrix_csv(values: np.ndarray) -> str:
    n = values.shape[0]
    if np.iscomplexobj(values):
        rows = (
            (str(i), str(j), fmt(values[i, j].real), fmt(values[i, j].imag))
            for i in range(n) for j in range(n)
        )
        return csv_text(["row", "col", "re", "im"], rows)
    flat = values.tolist()
    rows = ((str(i), str(j), fmt(v)) for i, row in enumerate(flat) for j, v in enumerate(row))
    return csv_text(["row", "col", "value"], rows)


def spectrum_csv(values: np.ndarray) -> str:
    return csv_text(["index", "eigenvalue"], ((str(k), fmt(v)) for k, v in enumerate(values, 1)))


def json_text(obj) -> str:
    return json.dumps(obj, indent=2, sort_keys=False) + "\n"
