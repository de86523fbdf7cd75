"""JSON and CSV reading/writing with schema validation and fixed number
formatting (17 significant digits), so identical inputs give identical bytes."""
from __future__ import annotations

import json
import math
from functools import lru_cache
from importlib import resources

import jsonschema
import numpy as np


class ValidationError(ValueError):
    """Input that is well-formed JSON but violates a schema or an invariant."""


def fmt(x: float) -> str:
    x = float(x)
    if not math.isfinite(x):
        raise ValueError("non-finite number in output")
    return format(x, ".17g")


def to_json_text(obj, indent: int = 0) -> str:
    """Deterministic JSON with every float written to 17 significant digits."""
    pad = " " * indent
    if isinstance(obj, dict):
        if not obj:
            return "{}"
        items = [f'{pad} {json.dumps(str(k))}: {to_json_text(v, indent + 1).lstrip()}'
                 for k, v in obj.items()]
        return "{\n" + ",\n".join(items) + "\n" + pad + "}"
    if isinstance(obj, (list, tuple, np.ndarray)):
        seq = list(obj)
        if all(not isinstance(v, (dict, list, tuple, np.ndarray)) for v in seq):
            return "[" + ", ".join(to_json_text(v) for v in seq) + "]"
        return "[\n" + ",\n".join(pad + " " + to_json_text(v, indent + 1) for v in seq) \
            + "\n" + pad + "]"
    if isinstance(obj, (bool, np.bool_)):
        return "true" if obj else "false"
    if isinstance(obj, (int, np.integer)):
        return str(int(obj))
    if isinstance(obj, (float, np.floating)):
        return fmt(obj)
    if obj is None:
        return "null"
    return json.dumps(str(obj))


def complex_pairs(values) -> list:
    """(..., 3) complex array to nested [re, im] lists."""
    arr = np.asarray(values, dtype=complex)
    return np.stack([arr.real, arr.imag], axis=-1).tolist()


def from_pairs(pairs) -> np.ndarray:
    arr = np.asarray(pairs, dtype=float)
    return arr[..., 0] + 1j * arr[..., 1]


@lru_cache(maxsize=None)
def schema(name: str) -> dict:
    text = resources.files("emwavelets").joinpath("schemas", f"{name}.schema.json").read_text()
    return json.loads(text)


def validate(obj, name: str):
    try:
        jsonschema.validate(obj, schema(name))
    except jsonschema.ValidationError as exc:
        raise ValidationError(f"{name}: {exc.message}") from exc


def read_json(path: str, name: str | None = None):
    with open(path) as fh:
        try:
            obj = json.load(fh)
        except json.JSONDecodeError as exc:
            raise ValidationError(f"{path}: not valid JSON ({exc})") from exc
    if name is not None:
        validate(obj, name)
    return obj


def write_json(path: str, obj, name: str | None = None):
    if name is not None:
        validate(obj, name)
    with open(path, "w") as fh:
        fh.write(to_json_text(obj) + "\n")


def write_csv(path: str, header: list[str], rows: np.ndarray):
    with open(path, "w") as fh:
        fh.write(",".join(header) + "\n")
        for row in np.asarray(rows, dtype=float):
            fh.write(",".join(fmt(v) for v in row) + "\n")
