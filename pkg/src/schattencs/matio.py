"""Plain-text matrix interchange.

The format is a header line ``rows cols`` followed by ``rows * cols`` pairs
``re im`` in row-major order, all whitespace separated. Values are written
with :func:`repr`, so a write/read round trip is exact.
"""

import numpy as np

from .errors import IoFailure, MatrixFileError

__all__ = ["read_matrix", "write_matrix", "parse_matrix", "format_matrix"]


def parse_matrix(text):
    tokens = text.split()
    if len(tokens) < 2:
        raise MatrixFileError("missing 'rows cols' header")
    try:
        rows, cols = int(tokens[0]), int(tokens[1])
    except ValueError:
        raise MatrixFileError(f"bad header {tokens[:2]}") from None
    if rows < 0 or cols < 0:
        raise MatrixFileError(f"negative shape {(rows, cols)}")
    body = tokens[2:]
    if len(body) != 2 * rows * cols:
        raise MatrixFileError(f"expected {2 * rows * cols} numbers, found {len(body)}")
    try:
        vals = np.array([float(t) for t in body], dtype=float)
    except ValueError as exc:
        raise MatrixFileError(str(exc)) from None
    return (vals[0::2] + 1j * vals[1::2]).reshape(rows, cols)


def format_matrix(M):
    M = np.asarray(M, dtype=np.complex128)
    if M.ndim != 2:
        raise MatrixFileError(f"expected a 2-D array, got shape {M.shape}")
    lines = [f"{M.shape[0]} {M.shape[1]}"]
    for row in M:
        lines.append(" ".join(f"{z.real!r} {z.imag!r}" for z in row.tolist()))
    return "\n".join(lines) + "\n"


def read_matrix(path):
    try:
        with open(path, encoding="utf-8") as fh:
            text = fh.read()
    except OSError as exc:
        raise IoFailure(f"cannot read {path}: {exc}") from exc
    return parse_matrix(text)


def write_matrix(path, M):
    try:
        with open(path, "w", encoding="utf-8") as fh:
            fh.write(format_matrix(M))
    except OSError as exc:
        raise IoFailure(f"cannot write {path}: {exc}") from exc
