"""Tensor file formats.

COO JSON::

    {"shape": [N1, ..., Nm], "entries": [{"idx": [j1, ..., jm], "val": v}, ...]}

with 1-based ``idx``; repeated indices are rejected.  The bit-string format
lists all entries of a 0/1 tensor with the first index varying fastest
(``T111, T211, T311, T121, ...``); whitespace is ignored.
"""
from __future__ import annotations

import hashlib
import json
import math
from typing import Sequence

import numpy as np

from .exceptions import NegativeEntry, ParseError
from .tensor import DenseTensor


def tensor_from_coo(obj) -> DenseTensor:
    if not isinstance(obj, dict) or "shape" not in obj or "entries" not in obj:
        raise ParseError('COO input needs "shape" and "entries"')
    try:
        shape = tuple(int(N) for N in obj["shape"])
    except (TypeError, ValueError):
        raise ParseError(f"bad shape {obj['shape']!r}") from None
    if len(shape) < 2 or any(N < 1 for N in shape):
        raise ParseError(f"shape must list at least two positive dimensions, got {list(shape)}")
    arr = np.zeros(shape)
    seen = set()
    for e in obj["entries"]:
        try:
            idx = tuple(int(j) - 1 for j in e["idx"])
            val = float(e["val"])
        except (KeyError, TypeError, ValueError):
            raise ParseError(f"bad entry {e!r}") from None
        if len(idx) != len(shape) or any(not 0 <= j < N for j, N in zip(idx, shape)):
            raise ParseError(f"index {[j + 1 for j in idx]} outside shape {list(shape)}")
        if idx in seen:
            raise ParseError(f"duplicate index {[j + 1 for j in idx]}")
        seen.add(idx)
        arr[idx] = val
    try:
        return DenseTensor(arr)
    except NegativeEntry as exc:
        raise ParseError(str(exc)) from None


def tensor_to_coo(T: DenseTensor) -> dict:
    flat = np.flatnonzero(T.data)
    idx = np.array(np.unravel_index(flat, T.shape, order="F")).T
    return {
        "shape": list(T.shape),
        "entries": [
            {"idx": [int(j) + 1 for j in row], "val": float(v)}
            for row, v in zip(idx, T.data[flat])
        ],
    }


def tensor_from_bits(bits: str, shape: Sequence[int] | None = None) -> DenseTensor:
    """Parse a 0/1 string; the default shape is the cube whose size matches (3x3x3 for 27)."""
    s = "".join(bits.split())
    if not s or set(s) - {"0", "1"}:
        raise ParseError("bit string must contain only 0 and 1")
    if shape is None:
        side = round(len(s) ** (1 / 3))
        if side ** 3 != len(s):
            raise ParseError(f"{len(s)} bits is not a cube; give the shape explicitly")
        shape = (side, side, side)
    if math.prod(shape) != len(s):
        raise ParseError(f"{len(s)} bits for shape {tuple(shape)}")
    return DenseTensor.from_flat(shape, [float(c) for c in s])


def tensor_to_bits(T: DenseTensor) -> str:
    data = T.data
    if not np.all((data == 0) | (data == 1)):
        raise ParseError("tensor is not 0/1")
    return "".join("1" if v else "0" for v in data)


def load_tensor(text: str, fmt: str = "coo") -> DenseTensor:
    if fmt == "coo":
        try:
            obj = json.loads(text)
        except json.JSONDecodeError as exc:
            raise ParseError(f"invalid JSON: {exc}") from None
        return tensor_from_coo(obj)
    if fmt == "binary27":
        T = tensor_from_bits(text, (3, 3, 3))
        return T
    raise ParseError(f"unknown format {fmt!r}")


def digest(T: DenseTensor) -> dict:
    h = hashlib.sha256()
    h.update(json.dumps(list(T.shape)).encode())
    h.update(np.ascontiguousarray(T.data).tobytes())
    return {"shape": list(T.shape), "nnz": T.nnz, "sha256": h.hexdigest()}
