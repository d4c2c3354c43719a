"""JSON readers and writers for dual matrices, vectors and scalars.

Writers render every float with 17 significant digits so a write-read cycle
reproduces the double exactly and re-serialising gives identical bytes.
Readers validate shapes and raise SchemaError on malformed documents.
"""

from __future__ import annotations

import json
from typing import Any

import numpy as np

from .dualmat import DualMatrix
from .dualnum import DualScalar
from .errors import SchemaError

__all__ = [
    "fmt17",
    "matrix_to_doc",
    "matrix_from_doc",
    "dumps_doc",
    "load_matrix",
    "dump_matrix",
    "scalar_to_doc",
    "scalar_from_doc",
    "vector_to_doc",
    "vector_from_doc",
]


def fmt17(value: float) -> str:
    """Decimal text with 17 significant digits; lossless for doubles."""
    if value == 0.0:
        value = 0.0  # normalise -0.0 so equal matrices serialise identically
    return format(float(value), ".17g")


def _pair(z: complex) -> list[float]:
    return [float(z.real), float(z.imag)]


def _render(obj: Any) -> str:
    """JSON writer that formats bare floats via fmt17."""
    if isinstance(obj, float):
        return fmt17(obj)
    if isinstance(obj, bool):
        return "true" if obj else "false"
    if isinstance(obj, int):
        return str(obj)
    if obj is None:
        return "null"
    if isinstance(obj, str):
        return json.dumps(obj)
    if isinstance(obj, (list, tuple)):
        return "[" + ", ".join(_render(v) for v in obj) + "]"
    if isinstance(obj, dict):
        items = (f"{json.dumps(str(k))}: {_render(v)}" for k, v in obj.items())
        return "{" + ", ".join(items) + "}"
    raise TypeError(f"cannot serialise {type(obj).__name__}")


def dumps_doc(doc: dict) -> str:
    return _render(doc) + "\n"


def matrix_to_doc(x: DualMatrix, **extra) -> dict:
    m, n = x.shape
    doc: dict[str, Any] = {"rows": m, "cols": n}
    doc["std"] = [[_pair(x.std[i, j]) for j in range(n)] for i in range(m)]
    if np.any(x.inf != 0):
        doc["inf"] = [[_pair(x.inf[i, j]) for j in range(n)] for i in range(m)]
    doc.update(extra)
    return doc


def _parse_part(raw, rows: int, cols: int, label: str) -> np.ndarray:
    try:
        arr = np.asarray(raw, dtype=float)
    except (TypeError, ValueError) as exc:
        raise SchemaError(f"{label}: entries must be [re, im] number pairs") from exc
    if arr.shape != (rows, cols, 2):
        raise SchemaError(
            f"{label}: expected shape {rows}x{cols} of [re, im] pairs, got {arr.shape}"
        )
    return arr[..., 0] + 1j * arr[..., 1]


def matrix_from_doc(doc: Any) -> DualMatrix:
    if not isinstance(doc, dict):
        raise SchemaError("dual matrix document must be a JSON object")
    try:
        rows, cols = int(doc["rows"]), int(doc["cols"])
    except (KeyError, TypeError, ValueError) as exc:
        raise SchemaError("dual matrix document needs integer 'rows' and 'cols'") from exc
    if rows < 1 or cols < 1:
        raise SchemaError("matrix dimensions must be positive")
    if "std" not in doc:
        raise SchemaError("dual matrix document needs a 'std' field")
    std = _parse_part(doc["std"], rows, cols, "std")
    inf = _parse_part(doc["inf"], rows, cols, "inf") if "inf" in doc else None
    return DualMatrix(std, inf)


def load_matrix(path) -> DualMatrix:
    try:
        with open(path) as fh:
            doc = json.load(fh)
    except json.JSONDecodeError as exc:
        raise SchemaError(f"{path}: not valid JSON ({exc})") from exc
    except OSError as exc:
        raise SchemaError(f"{path}: {exc}") from exc
    return matrix_from_doc(doc)


def dump_matrix(x: DualMatrix, path, **extra) -> None:
    with open(path, "w") as fh:
        fh.write(dumps_doc(matrix_to_doc(x, **extra)))


def scalar_to_doc(z: DualScalar) -> dict:
    return {"std": _pair(z.std), "inf": _pair(z.inf)}


def scalar_from_doc(doc: Any, label: str = "scalar") -> DualScalar:
    if not isinstance(doc, dict) or "std" not in doc:
        raise SchemaError(f"{label}: dual scalar needs a 'std' [re, im] pair")

    def one(part, name):
        arr = np.asarray(part, dtype=float)
        if arr.shape != (2,):
            raise SchemaError(f"{label}.{name}: expected an [re, im] pair")
        return complex(arr[0], arr[1])

    std = one(doc["std"], "std")
    inf = one(doc["inf"], "inf") if "inf" in doc else 0j
    return DualScalar(std, inf)


def vector_to_doc(v: DualMatrix) -> dict:
    m, n = v.shape
    if n != 1:
        raise SchemaError("vectors serialise as column matrices")
    doc: dict[str, Any] = {"std": [_pair(v.std[i, 0]) for i in range(m)]}
    if np.any(v.inf != 0):
        doc["inf"] = [_pair(v.inf[i, 0]) for i in range(m)]
    return doc


def vector_from_doc(doc: Any, label: str = "vector") -> DualMatrix:
    if not isinstance(doc, dict) or "std" not in doc:
        raise SchemaError(f"{label}: dual vector needs a 'std' list of [re, im] pairs")

    def one(part, name):
        try:
            arr = np.asarray(part, dtype=float)
        except (TypeError, ValueError) as exc:
            raise SchemaError(f"{label}.{name}: entries must be [re, im] pairs") from exc
        if arr.ndim != 2 or arr.shape[1] != 2 or arr.shape[0] < 1:
            raise SchemaError(f"{label}.{name}: expected a list of [re, im] pairs")
        return arr[:, 0] + 1j * arr[:, 1]

    std = one(doc["std"], "std")
    inf = one(doc["inf"], "inf") if "inf" in doc else None
    if inf is not None and inf.shape != std.shape:
        raise SchemaError(f"{label}: std and inf lengths differ")
    return DualMatrix.column(std, inf)
