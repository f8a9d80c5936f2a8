"""JSON encoding of matrices, systems and reports; atomic file output."""

from __future__ import annotations

import hashlib
import json
import os
import sys
import tempfile
from fractions import Fraction

from . import __version__, linalg
from .ibn import Configuration
from .polyhedra import InequalitySystem


def encode(x):
    """Make ``x`` JSON-safe: ints become decimal strings, Fractions ``"p/q"``."""
    if hasattr(x, "to_json"):
        return encode(x.to_json())
    if isinstance(x, dict):
        return {str(k): encode(v) for k, v in x.items()}
    if isinstance(x, (list, tuple, set, frozenset)):
        items = sorted(x) if isinstance(x, (set, frozenset)) else x
        return [encode(v) for v in items]
    if isinstance(x, bool) or x is None or isinstance(x, str):
        return x
    if isinstance(x, int):
        return str(x)
    if isinstance(x, Fraction):
        return linalg.frac_str(x)
    if isinstance(x, float):
        return x
    return str(x)


def matrix_json(M) -> dict:
    return {"rows": [[str(v) for v in r] for r in M]}


def vector_json(v) -> dict:
    return {"vec": [str(x) for x in v]}


def parse_rows(data) -> tuple:
    """Accept ``{"rows": ...}``, ``{"vectors": ...}``, ``{"A": ...}`` or a bare list."""
    if isinstance(data, dict):
        for key in ("rows", "vectors", "A"):
            if key in data:
                data = data[key]
                break
        else:
            raise ValueError("expected a 'rows' or 'vectors' field")
    return linalg.as_mat(data)


def parse_vector(data) -> tuple:
    if isinstance(data, dict):
        data = data["vec"]
    return linalg.as_vec(data)


def parse_configuration(data) -> Configuration:
    return Configuration(parse_rows(data))


def parse_system(data) -> InequalitySystem:
    if not isinstance(data, dict) or "A" not in data or "b" not in data:
        raise ValueError("an inequality system needs 'A' and 'b'")
    return InequalitySystem(parse_rows(data["A"]), parse_vector(data["b"]))


def read_text(path: str | None) -> str:
    if path is None or path == "-":
        return sys.stdin.read()
    with open(path, encoding="utf-8") as fh:
        return fh.read()


def sha256(text: str) -> str:
    return hashlib.sha256(text.encode("utf-8")).hexdigest()


def envelope(command: str, input_text: str | None, result, elapsed: float | None = None,
             stable: bool = False) -> dict:
    out = {
        "tool": "scrtool",
        "version": __version__,
        "command": command,
        "input_sha256": sha256(input_text) if input_text is not None else None,
        "result": encode(result),
    }
    if elapsed is not None and not stable:
        out["elapsed_seconds"] = round(elapsed, 6)
    return out


def dumps(obj) -> str:
    return json.dumps(obj, indent=2, sort_keys=True) + "\n"


def write_atomic(path: str, text: str) -> None:
    """Write via a temporary file in the target directory and rename."""
    d = os.path.dirname(os.path.abspath(path))
    fd, tmp = tempfile.mkstemp(prefix=".scrtool-", dir=d)
    try:
        with os.fdopen(fd, "w", encoding="utf-8") as fh:
            fh.write(text)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


def emit(text: str, path: str | None) -> None:
    if path:
        write_atomic(path, text)
    else:
        sys.stdout.write(text)
