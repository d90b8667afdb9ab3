"""Binary eigenvector dumps for debugging.

Layout: 16-byte header (magic b"DSQ1", dimension as little-endian uint64,
version byte, 3 reserved zero bytes) followed by the vector as little-endian
float64.
"""

from __future__ import annotations

import struct

import numpy as np

MAGIC = b"DSQ1"
_HEADER = struct.Struct("<4sQB3s")


def dump_eigenvector(path, vector: np.ndarray, version: int = 1) -> None:
    vec = np.ascontiguousarray(vector, dtype="<f8")
    if vec.ndim != 1:
        raise ValueError("expected a 1-D vector")
    if not (0 <= version <= 255):
        raise ValueError("version must fit one byte")
    with open(path, "wb") as fh:
        fh.write(_HEADER.pack(MAGIC, vec.size, version, b"\x00\x00\x00"))
        fh.write(vec.tobytes())


def load_eigenvector(path) -> tuple[np.ndarray, int]:
    with open(path, "rb") as fh:
        header = fh.read(_HEADER.size)
        if len(header) != _HEADER.size:
            raise ValueError("truncated header")
        magic, dim, version, _ = _HEADER.unpack(header)
        if magic != MAGIC:
            raise ValueError(f"bad magic {magic!r}")
        payload = fh.read()
    vec = np.frombuffer(payload, dtype="<f8")
    if vec.size != dim:
        raise ValueError(f"expected {dim} values, found {vec.size}")
    return vec.astype(float), version
