"""Matrix Market reader/writer for square dense complex matrices.

Supports the ``array`` and ``coordinate`` formats with ``real``, ``complex``
or ``integer`` fields and ``general``, ``symmetric``, ``hermitian`` or
``skew-symmetric`` symmetry.  Symmetric-family files must store the lower
triangle only (the format's rule); the full matrix is expanded on read, and
coordinate duplicates are summed before expansion.  ``pattern`` files carry
no values and are rejected.

Parse failures raise :class:`MatrixMarketError` with the 1-based line number.
"""
from __future__ import annotations

import math

import numpy as np

from .linalg import dense_matrix

__all__ = ["MatrixMarketError", "read_matrix_market", "write_matrix_market"]

_FORMATS = ("array", "coordinate")
_FIELDS = ("real", "complex", "integer")
_SYMMETRIES = ("general", "symmetric", "hermitian", "skew-symmetric")


class MatrixMarketError(ValueError):
    def __init__(self, message: str, line: int | None = None):
        self.line = line
        super().__init__(f"line {line}: {message}" if line is not None else message)


def _parse_value(tokens: list[str], field: str, lineno: int) -> complex:
    want = 2 if field == "complex" else 1
    if len(tokens) != want:
        raise MatrixMarketError(
            f"expected {want} value token(s) for field '{field}', got {len(tokens)}",
            lineno)
    try:
        parts = [float(tok) for tok in tokens]
    except ValueError:
        raise MatrixMarketError(f"non-numeric value {' '.join(tokens)!r}", lineno) from None
    if not all(math.isfinite(p) for p in parts):
        raise MatrixMarketError("non-finite value", lineno)
    return complex(parts[0], parts[1]) if field == "complex" else complex(parts[0], 0.0)


def read_matrix_market(path) -> np.ndarray:
    """Read a square matrix from a Matrix Market file."""
    with open(path, "r", encoding="ascii") as fh:
        lines = fh.read().splitlines()
    if not lines:
        raise MatrixMarketError("empty file", 1)

    header = lines[0].split()
    if len(header) != 5 or header[0].lower() != "%%matrixmarket" or header[1].lower() != "matrix":
        raise MatrixMarketError("malformed header; expected "
                                "'%%MatrixMarket matrix <format> <field> <symmetry>'", 1)
    fmt, field, symmetry = (tok.lower() for tok in header[2:5])
    if fmt not in _FORMATS:
        raise MatrixMarketError(f"unsupported format {fmt!r}", 1)
    if field == "pattern":
        raise MatrixMarketError("pattern files carry no values", 1)
    if field not in _FIELDS:
        raise MatrixMarketError(f"unsupported field {field!r}", 1)
    if symmetry not in _SYMMETRIES:
        raise MatrixMarketError(f"unsupported symmetry {symmetry!r}", 1)

    # First non-comment, non-blank line after the header is the size line.
    pos = 1
    while pos < len(lines) and (not lines[pos].strip() or lines[pos].lstrip().startswith("%")):
        pos += 1
    if pos == len(lines):
        raise MatrixMarketError("missing size line", len(lines))
    size_tokens = lines[pos].split()
    want_sizes = 3 if fmt == "coordinate" else 2
    if len(size_tokens) != want_sizes:
        raise MatrixMarketError(f"size line must have {want_sizes} integers", pos + 1)
    try:
        sizes = [int(tok) for tok in size_tokens]
    except ValueError:
        raise MatrixMarketError("non-integer size entry", pos + 1) from None
    m, n = sizes[0], sizes[1]
    if m != n:
        raise MatrixMarketError(f"matrix is {m}x{n}; only square matrices are accepted", pos + 1)
    if n < 1:
        raise MatrixMarketError("matrix dimension must be at least 1", pos + 1)

    data_lines = []  # (lineno, tokens)
    for i in range(pos + 1, len(lines)):
        stripped = lines[i].strip()
        if not stripped or stripped.startswith("%"):
            continue
        data_lines.append((i + 1, stripped.split()))

    a = np.zeros((n, n), dtype=np.complex128)
    if fmt == "array":
        _fill_array(a, n, field, symmetry, data_lines)
    else:
        _fill_coordinate(a, n, field, symmetry, sizes[2], data_lines)

    try:
        return dense_matrix(a)
    except ValueError as exc:
        raise MatrixMarketError(str(exc)) from exc


def _array_positions(n: int, symmetry: str):
    """Stored (row, col) positions in file order: column-major, lower triangle
    for the symmetric family (strict for skew-symmetric)."""
    for j in range(n):
        if symmetry == "general":
            start = 0
        elif symmetry == "skew-symmetric":
            start = j + 1
        else:
            start = j
        for i in range(start, n):
            yield i, j


def _fill_array(a, n, field, symmetry, data_lines):
    positions = list(_array_positions(n, symmetry))
    if len(data_lines) != len(positions):
        lineno = data_lines[len(positions)][0] if len(data_lines) > len(positions) else None
        raise MatrixMarketError(
            f"expected {len(positions)} entries for {symmetry} array, got {len(data_lines)}",
            lineno)
    for (i, j), (lineno, tokens) in zip(positions, data_lines):
        v = _parse_value(tokens, field, lineno)
        a[i, j] = v
        if i != j:
            if symmetry == "symmetric":
                a[j, i] = v
            elif symmetry == "hermitian":
                a[j, i] = v.conjugate()
            elif symmetry == "skew-symmetric":
                a[j, i] = -v
        elif symmetry == "hermitian" and v.imag != 0.0:
            raise MatrixMarketError("hermitian diagonal entry must be real", lineno)


def _fill_coordinate(a, n, field, symmetry, nnz, data_lines):
    if len(data_lines) != nnz:
        lineno = data_lines[nnz][0] if len(data_lines) > nnz else None
        raise MatrixMarketError(f"expected {nnz} entries, got {len(data_lines)}", lineno)
    for lineno, tokens in data_lines:
        if len(tokens) < 2:
            raise MatrixMarketError("coordinate entry needs row and column indices", lineno)
        try:
            i, j = int(tokens[0]) - 1, int(tokens[1]) - 1
        except ValueError:
            raise MatrixMarketError("non-integer coordinate index", lineno) from None
        if not (0 <= i < n and 0 <= j < n):
            raise MatrixMarketError(f"index ({i + 1}, {j + 1}) outside {n}x{n}", lineno)
        if symmetry != "general" and i < j:
            raise MatrixMarketError(
                f"{symmetry} files must store the lower triangle only", lineno)
        if symmetry == "skew-symmetric" and i == j:
            raise MatrixMarketError("skew-symmetric files admit no diagonal entries", lineno)
        v = _parse_value(tokens[2:], field, lineno)
        if symmetry == "hermitian" and i == j and v.imag != 0.0:
            raise MatrixMarketError("hermitian diagonal entry must be real", lineno)
        a[i, j] += v
        if i != j:
            if symmetry == "symmetric":
                a[j, i] += v
            elif symmetry == "hermitian":
                a[j, i] += v.conjugate()
            elif symmetry == "skew-symmetric":
                a[j, i] += -v


def write_matrix_market(a: np.ndarray, path) -> None:
    """Write in array/complex/general format at full (17 significant digit)
    precision, so read-after-write reproduces the matrix exactly."""
    a = dense_matrix(a)
    n = a.shape[0]
    out = ["%%MatrixMarket matrix array complex general", f"{n} {n}"]
    for j in range(n):
        for i in range(n):
            v = a[i, j]
            out.append(f"{v.real:.17g} {v.imag:.17g}")
    with open(path, "w", encoding="ascii") as fh:
        fh.write("\n".join(out) + "\n")
