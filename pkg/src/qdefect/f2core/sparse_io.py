"""Sparse text matrix format.

A matrix is written as a header line ``"<n_rows> <n_cols>"`` followed by
exactly ``n_rows`` lines, each listing the set columns of one row as
increasing, single-space-separated decimal indices (an empty line for a zero
row).  Every line, including the last, ends with ``"\\n"``.  Reading and then
writing a file in this form reproduces it byte for byte.
"""

from __future__ import annotations

from typing import Iterator, TextIO

from .bits import BitMatrix


def format_matrix(M: BitMatrix) -> str:
    lines = [f"{M.n_rows} {M.n_cols}"]
    lines.extend(" ".join(str(j) for j in s) for s in M.supports())
    return "\n".join(lines) + "\n"


def _parse_lines(lines: Iterator[str]) -> BitMatrix:
    try:
        header = next(lines)
    except StopIteration:
        raise ValueError("missing matrix header") from None
    parts = header.split()
    if len(parts) != 2:
        raise ValueError(f"bad matrix header {header!r}")
    n_rows, n_cols = int(parts[0]), int(parts[1])
    if n_rows < 0 or n_cols < 0:
        raise ValueError("matrix dimensions must be nonnegative")
    supports = []
    for i in range(n_rows):
        try:
            line = next(lines)
        except StopIteration:
            raise ValueError(f"expected {n_rows} rows, got {i}") from None
        cols = [int(tok) for tok in line.split()]
        if sorted(set(cols)) != cols:
            raise ValueError(f"row {i}: indices must be strictly increasing")
        supports.append(cols)
    return BitMatrix.from_supports(supports, n_cols)


def split_lines(text: str) -> list[str]:
    """Lines of ``text``, which must end with a newline."""
    if not text.endswith("\n"):
        raise ValueError("input must end with a newline")
    return text[:-1].split("\n")


def parse_matrix(text: str) -> BitMatrix:
    lines = iter(split_lines(text))
    M = _parse_lines(lines)
    if any(True for _ in lines):
        raise ValueError("trailing content after matrix rows")
    return M


def read_matrix(f: TextIO | str) -> BitMatrix:
    if isinstance(f, str):
        with open(f) as fh:
            return parse_matrix(fh.read())
    return parse_matrix(f.read())


def write_matrix(M: BitMatrix, f: TextIO | str) -> None:
    text = format_matrix(M)
    if isinstance(f, str):
        with open(f, "w", newline="\n") as fh:
            fh.write(text)
    else:
        f.write(text)
