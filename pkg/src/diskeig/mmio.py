"""Matrix Market ingestion and the sparse coordinate container.

Supports coordinate and array formats with real, integer, or complex
fields and general/symmetric/skew-symmetric/hermitian symmetry headers.
Pattern matrices carry no values and are rejected.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .errors import MatrixMarketError

VALID_SYMMETRIES = ("general", "symmetric", "skew-symmetric", "hermitian")


@dataclass(frozen=True)
class SparseMatrix:
    """Coordinate-form sparse matrix with an explicit symmetry tag.

    Entries are stored 0-based.  For non-general symmetry only one
    triangle is stored; ``to_dense`` expands the implied entries.
    """

    n_rows: int
    n_cols: int
    entries: list = field(default_factory=list)  # (row, col, complex value)
    symmetry_tag: str = "general"

    def __post_init__(self):
        if self.n_rows <= 0 or self.n_cols <= 0:
            raise ValueError("matrix dimensions must be positive")
        if self.symmetry_tag not in VALID_SYMMETRIES:
            raise ValueError(f"unknown symmetry tag {self.symmetry_tag!r}")
        seen = set()
        for i, j, _ in self.entries:
            if not (0 <= i < self.n_rows and 0 <= j < self.n_cols):
                raise ValueError(f"entry index ({i}, {j}) out of range")
            if (i, j) in seen:
                raise ValueError(f"duplicate entry at ({i}, {j})")
            seen.add((i, j))

    @property
    def nnz_stored(self):
        return len(self.entries)

    def to_dense(self):
        """Expand to a dense complex array, applying the symmetry tag."""
        a = np.zeros((self.n_rows, self.n_cols), dtype=complex)
        for i, j, v in self.entries:
            a[i, j] = v
            if i != j:
                if self.symmetry_tag == "symmetric":
                    a[j, i] = v
                elif self.symmetry_tag == "skew-symmetric":
                    a[j, i] = -v
                elif self.symmetry_tag == "hermitian":
                    a[j, i] = np.conj(v)
        return a


def _parse_value(tokens, mm_field, line_no):
    try:
        if mm_field == "complex":
            return complex(float(tokens[0]), float(tokens[1]))
        return complex(float(tokens[0]))
    except (ValueError, IndexError):
        raise MatrixMarketError("malformed numeric value", line_no) from None


def read_matrix_market(path):
    """Read a Matrix Market file into a :class:`SparseMatrix`.

    Real and integer fields are promoted to complex on load.  The
    ``pattern`` field carries no values and is rejected.
    """
    with open(path, "r", encoding="ascii", errors="replace") as fh:
        lines = fh.readlines()
    if not lines:
        raise MatrixMarketError("empty file", 1)

    header = lines[0].strip().split()
    if len(header) != 5 or header[0] != "%%MatrixMarket" or header[1].lower() != "matrix":
        raise MatrixMarketError("missing or malformed %%MatrixMarket header", 1)
    mm_format, mm_field, mm_symmetry = (t.lower() for t in header[2:5])
    if mm_format not in ("coordinate", "array"):
        raise MatrixMarketError(f"unsupported format {mm_format!r}", 1)
    if mm_field == "pattern":
        raise MatrixMarketError("pattern matrices carry no values and are unsupported", 1)
    if mm_field not in ("real", "integer", "complex"):
        raise MatrixMarketError(f"unsupported field {mm_field!r}", 1)
    if mm_symmetry not in VALID_SYMMETRIES:
        raise MatrixMarketError(f"unsupported symmetry {mm_symmetry!r}", 1)

    # skip comments and blank lines up to the size line
    idx = 1
    while idx < len(lines) and (lines[idx].startswith("%") or not lines[idx].strip()):
        idx += 1
    if idx >= len(lines):
        raise MatrixMarketError("missing size line", len(lines))

    size_tokens = lines[idx].split()
    size_line_no = idx + 1
    values_per_entry = 2 if mm_field == "complex" else 1

    if mm_format == "coordinate":
        if len(size_tokens) != 3:
            raise MatrixMarketError("coordinate size line needs 'rows cols nnz'", size_line_no)
        try:
            n_rows, n_cols, nnz = (int(t) for t in size_tokens)
        except ValueError:
            raise MatrixMarketError("non-integer size line", size_line_no) from None
        entries = []
        count = 0
        for line_no in range(size_line_no, len(lines)):
            raw = lines[line_no].strip()
            if not raw or raw.startswith("%"):
                continue
            tokens = raw.split()
            if len(tokens) != 2 + values_per_entry:
                raise MatrixMarketError(
                    f"expected {2 + values_per_entry} tokens, got {len(tokens)}", line_no + 1
                )
            try:
                i, j = int(tokens[0]), int(tokens[1])
            except ValueError:
                raise MatrixMarketError("non-integer coordinate index", line_no + 1) from None
            if not (1 <= i <= n_rows and 1 <= j <= n_cols):
                raise MatrixMarketError(f"index ({i}, {j}) out of range", line_no + 1)
            v = _parse_value(tokens[2:], mm_field, line_no + 1)
            entries.append((i - 1, j - 1, v))
            count += 1
        if count != nnz:
            raise MatrixMarketError(f"declared nnz={nnz} but found {count} entries", size_line_no)
    else:  # array: dense column-major listing
        if len(size_tokens) != 2:
            raise MatrixMarketError("array size line needs 'rows cols'", size_line_no)
        try:
            n_rows, n_cols = (int(t) for t in size_tokens)
        except ValueError:
            raise MatrixMarketError("non-integer size line", size_line_no) from None
        values = []
        for line_no in range(size_line_no, len(lines)):
            raw = lines[line_no].strip()
            if not raw or raw.startswith("%"):
                continue
            tokens = raw.split()
            if len(tokens) != values_per_entry:
                raise MatrixMarketError(
                    f"expected {values_per_entry} tokens, got {len(tokens)}", line_no + 1
                )
            values.append(_parse_value(tokens, mm_field, line_no + 1))
        if mm_symmetry == "general":
            expected = n_rows * n_cols
        else:
            if n_rows != n_cols:
                raise MatrixMarketError("symmetric array matrix must be square", size_line_no)
            expected = n_rows * (n_rows + 1) // 2
            if mm_symmetry == "skew-symmetric":
                expected = n_rows * (n_rows - 1) // 2
        if len(values) != expected:
            raise MatrixMarketError(
                f"array body has {len(values)} values, expected {expected}", size_line_no
            )
        entries = []
        k = 0
        for j in range(n_cols):
            if mm_symmetry == "general":
                i0 = 0
            elif mm_symmetry == "skew-symmetric":
                i0 = j + 1
            else:
                i0 = j
            for i in range(i0, n_rows):
                if values[k] != 0:
                    entries.append((i, j, values[k]))
                k += 1

    try:
        return SparseMatrix(n_rows, n_cols, entries, mm_symmetry)
    except ValueError as exc:
        raise MatrixMarketError(str(exc)) from None


def write_matrix_market(path, matrix: SparseMatrix):
    """Write a coordinate-format complex Matrix Market file.

    Values are written with ``repr`` so exactly representable entries
    round-trip bit-exactly through :func:`read_matrix_market`.
    """
    with open(path, "w", encoding="ascii") as fh:
        fh.write(f"%%MatrixMarket matrix coordinate complex {matrix.symmetry_tag}\n")
        fh.write(f"{matrix.n_rows} {matrix.n_cols} {matrix.nnz_stored}\n")
        for i, j, v in matrix.entries:
            v = complex(v)
            fh.write(f"{i + 1} {j + 1} {v.real!r} {v.imag!r}\n")


def from_dense(a, symmetry_tag="general"):
    """Build a general coordinate matrix from a dense array (zeros dropped)."""
    a = np.asarray(a)
    entries = [
        (i, j, complex(a[i, j]))
        for i in range(a.shape[0])
        for j in range(a.shape[1])
        if a[i, j] != 0
    ]
    return SparseMatrix(a.shape[0], a.shape[1], entries, symmetry_tag)
