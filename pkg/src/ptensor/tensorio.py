"""JSON file formats and deterministic serialization.

Tensor files:
    {"order": m, "dim": n, "layout": "coo"|"dense", "symmetric": bool,
     "entries": ..., "provenance": {...}?}
    dense entries: the full length-n^m row-major array.
    coo entries:   a list of [i1, ..., im, value] with 0-based indices;
                   omitted entries are zero.  With symmetric=true each
                   listed entry is replicated to all index permutations and
                   duplicate listings of the same orbit must agree to 1e-12.

Vector files:  {"dim": n, "entries": [...]}.

All floats are emitted with 17 significant digits, and maps keep their
insertion order, so equal inputs always serialize to identical bytes and
files round-trip bit exactly.
"""

from __future__ import annotations

import hashlib
import itertools
import json
import math

import numpy as np

from .core import Tensor
from .errors import ParseError

SYMMETRY_TOL = 1e-12


# ---------------------------------------------------------------------------
# canonical JSON


def format_float(v: float) -> str:
    v = float(v)
    if math.isnan(v) or math.isinf(v):
        raise ValueError("cannot serialize non-finite float")
    return "%.17g" % v


def dumps_canonical(obj) -> str:
    """Deterministic JSON text: fixed map order, %.17g floats."""
    parts: list[str] = []
    _write_canonical(obj, parts)
    return "".join(parts)


def _write_canonical(obj, parts: list):
    if isinstance(obj, dict):
        parts.append("{")
        first = True
        for key, val in obj.items():
            if not isinstance(key, str):
                raise TypeError(f"JSON object keys must be strings, got {type(key)}")
            if not first:
                parts.append(",")
            first = False
            parts.append(json.dumps(key))
            parts.append(":")
            _write_canonical(val, parts)
        parts.append("}")
    elif isinstance(obj, (list, tuple)) or isinstance(obj, np.ndarray):
        if isinstance(obj, np.ndarray):
            obj = obj.tolist()
        parts.append("[")
        for i, val in enumerate(obj):
            if i:
                parts.append(",")
            _write_canonical(val, parts)
        parts.append("]")
    elif isinstance(obj, bool) or isinstance(obj, np.bool_):
        parts.append("true" if obj else "false")
    elif isinstance(obj, (int, np.integer)):
        parts.append(str(int(obj)))
    elif isinstance(obj, (float, np.floating)):
        parts.append(format_float(float(obj)))
    elif obj is None:
        parts.append("null")
    elif isinstance(obj, str):
        parts.append(json.dumps(obj))
    else:
        raise TypeError(f"cannot serialize {type(obj)} canonically")


# ---------------------------------------------------------------------------
# provenance checksums


def tensor_checksum(order: int, dim: int, values, claims: dict) -> str:
    """Checksum binding generator claims to the exact entries they describe."""
    payload = {
        "order": int(order),
        "dim": int(dim),
        "entries": [float(v) for v in np.asarray(values, dtype=float).reshape(-1)],
        "claims": {k: claims[k] for k in sorted(claims)},
    }
    return hashlib.sha256(dumps_canonical(payload).encode("utf-8")).hexdigest()


# ---------------------------------------------------------------------------
# writing


def tensor_to_json_dict(A: Tensor, layout: str = "dense") -> dict:
    if layout not in ("dense", "coo"):
        raise ValueError(f"unknown layout {layout!r}")
    out = {
        "order": A.order,
        "dim": A.dim,
        "layout": layout,
        "symmetric": bool(A.symmetric),
    }
    if layout == "dense":
        out["entries"] = [float(v) for v in A.values]
    else:
        entries = []
        for index in np.argwhere(A.data != 0.0):
            idx = tuple(int(i) for i in index)
            if A.symmetric and idx != tuple(sorted(idx)):
                continue  # one representative per orbit
            entries.append([*idx, float(A.data[idx])])
        out["entries"] = entries
    if A.provenance:
        claims = {k: v for k, v in A.provenance.items() if k != "checksum"}
        prov = dict(claims)
        prov["checksum"] = tensor_checksum(A.order, A.dim, A.values, claims)
        out["provenance"] = prov
    return out


def write_tensor(A: Tensor, path, layout: str = "dense") -> None:
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(dumps_canonical(tensor_to_json_dict(A, layout=layout)))
        fh.write("\n")


def vector_to_json_dict(x) -> dict:
    v = np.asarray(x, dtype=float).reshape(-1)
    return {"dim": int(v.size), "entries": [float(t) for t in v]}


def write_vector(x, path) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(dumps_canonical(vector_to_json_dict(x)))
        fh.write("\n")


# ---------------------------------------------------------------------------
# parsing


def _require(cond: bool, msg: str):
    if not cond:
        raise ParseError(msg)


def parse_tensor(obj) -> Tensor:
    _require(isinstance(obj, dict), "tensor file must contain a JSON object")
    for key in ("order", "dim", "layout", "symmetric", "entries"):
        _require(key in obj, f"tensor object is missing the {key!r} field")
    order, dim = obj["order"], obj["dim"]
    _require(isinstance(order, int) and order >= 2, "order must be an integer >= 2")
    _require(isinstance(dim, int) and dim >= 1, "dim must be an integer >= 1")
    layout = obj["layout"]
    _require(layout in ("dense", "coo"), f"unknown layout {layout!r}")
    symmetric = obj["symmetric"]
    _require(isinstance(symmetric, bool), "symmetric must be a boolean")
    entries = obj["entries"]
    _require(isinstance(entries, list), "entries must be a list")

    if layout == "dense":
        _require(
            len(entries) == dim**order,
            f"dense entries must have length {dim ** order}, got {len(entries)}",
        )
        try:
            data = np.asarray(entries, dtype=float).reshape((dim,) * order)
        except (TypeError, ValueError) as exc:
            raise ParseError(f"dense entries are not numeric: {exc}") from None
    else:
        data = _parse_coo(entries, order, dim, symmetric)

    _require(bool(np.all(np.isfinite(data))), "tensor entries must be finite")

    if symmetric:
        dev = _symmetry_deviation(data)
        scale = max(1.0, float(np.max(np.abs(data))))
        _require(
            dev <= SYMMETRY_TOL * scale,
            f"symmetric flag set but entries deviate by {dev:.3e} under transposition",
        )

    provenance = None
    trusted = False
    if "provenance" in obj and obj["provenance"] is not None:
        prov = obj["provenance"]
        _require(isinstance(prov, dict), "provenance must be an object")
        claims = {k: v for k, v in prov.items() if k != "checksum"}
        stored = prov.get("checksum")
        trusted = stored == tensor_checksum(order, dim, data, claims)
        provenance = claims

    return Tensor(data, symmetric=symmetric, provenance=provenance, provenance_trusted=trusted)


def _symmetry_deviation(data: np.ndarray) -> float:
    dev = 0.0
    for k in range(data.ndim - 1):
        dev = max(dev, float(np.max(np.abs(data - np.swapaxes(data, k, k + 1)))))
    return dev


def _parse_coo(entries, order: int, dim: int, symmetric: bool) -> np.ndarray:
    data = np.zeros((dim,) * order)
    seen: dict[tuple, float] = {}
    for item in entries:
        _require(
            isinstance(item, list) and len(item) == order + 1,
            f"coo entries must be [i1, ..., i{order}, value] lists",
        )
        raw_idx, value = item[:-1], item[-1]
        _require(
            all(isinstance(i, int) for i in raw_idx),
            f"coo indices must be integers, got {raw_idx}",
        )
        idx = tuple(raw_idx)
        _require(
            all(0 <= i < dim for i in idx),
            f"coo index {idx} out of range for dimension {dim}",
        )
        try:
            value = float(value)
        except (TypeError, ValueError):
            raise ParseError(f"coo value {value!r} is not numeric") from None
        key = tuple(sorted(idx)) if symmetric else idx
        if key in seen:
            _require(
                abs(seen[key] - value) <= 1e-12,
                f"conflicting duplicate listings for index {idx}: "
                f"{seen[key]!r} vs {value!r}",
            )
            continue
        seen[key] = value
        if symmetric:
            for perm in set(itertools.permutations(idx)):
                data[perm] = value
        else:
            data[idx] = value
    return data


def read_tensor(path) -> Tensor:
    return parse_tensor(_load_json(path))


def parse_vector(obj) -> np.ndarray:
    _require(isinstance(obj, dict), "vector file must contain a JSON object")
    _require("dim" in obj and "entries" in obj, "vector object needs dim and entries")
    dim, entries = obj["dim"], obj["entries"]
    _require(isinstance(dim, int) and dim >= 1, "dim must be an integer >= 1")
    _require(isinstance(entries, list) and len(entries) == dim,
             f"entries must be a list of length {dim}")
    try:
        v = np.asarray(entries, dtype=float)
    except (TypeError, ValueError) as exc:
        raise ParseError(f"vector entries are not numeric: {exc}") from None
    _require(bool(np.all(np.isfinite(v))), "vector entries must be finite")
    return v


def read_vector(path) -> np.ndarray:
    return parse_vector(_load_json(path))


def _load_json(path):
    try:
        with open(path, "r", encoding="utf-8") as fh:
            return json.load(fh)
    except OSError as exc:
        raise ParseError(f"cannot read {path}: {exc}") from None
    except json.JSONDecodeError as exc:
        raise ParseError(f"invalid JSON in {path}: {exc}") from None
