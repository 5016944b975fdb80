"""Code bundle files: a CSS code's two matrices plus a small header.

Layout (every line ends with ``"\\n"``)::

    qdefect-bundle 1
    n <n>
    name <name>
    P
    <P in the sparse matrix format>
    Q
    <Q in the sparse matrix format>

``name`` may be empty (the line is then ``"name "``).  Parsing does not
validate commutation; :func:`load_code` does.
"""

from __future__ import annotations

import sys
from typing import TextIO

from .csscode import CssCode
from .f2core import BitMatrix, format_matrix
from .f2core.sparse_io import _parse_lines, split_lines

MAGIC = "qdefect-bundle 1"


def format_bundle(P: BitMatrix, Q: BitMatrix, name: str = "") -> str:
    if P.n_cols != Q.n_cols:
        raise ValueError("P and Q must have the same number of columns")
    head = f"{MAGIC}\nn {P.n_cols}\nname {name}\n"
    return head + "P\n" + format_matrix(P) + "Q\n" + format_matrix(Q)


def format_code(code: CssCode) -> str:
    return format_bundle(code.P, code.Q, code.name)


def _expect(lines, want: str) -> str:
    try:
        line = next(lines)
    except StopIteration:
        raise ValueError(f"bundle ended early; expected {want!r}") from None
    if not line.startswith(want):
        raise ValueError(f"expected {want!r}, got {line!r}")
    return line[len(want) :]


def parse_bundle(text: str) -> tuple[BitMatrix, BitMatrix, str]:
    """Return ``(P, Q, name)``; raises ``ValueError`` on malformed input."""
    lines = iter(split_lines(text))
    _expect(lines, MAGIC)
    n = int(_expect(lines, "n "))
    name = _expect(lines, "name ")
    _expect(lines, "P")
    P = _parse_lines(lines)
    _expect(lines, "Q")
    Q = _parse_lines(lines)
    if any(True for _ in lines):
        raise ValueError("trailing content after Q")
    for label, M in (("P", P), ("Q", Q)):
        if M.n_cols != n:
            raise ValueError(f"{label} has {M.n_cols} columns, header says n = {n}")
    return P, Q, name


def load_code(path: str | TextIO) -> CssCode:
    """Read a bundle from a path, ``"-"`` (stdin) or an open file."""
    if path == "-":
        text = sys.stdin.read()
    elif isinstance(path, str):
        with open(path) as fh:
            text = fh.read()
    else:
        text = path.read()
    P, Q, name = parse_bundle(text)
    return CssCode(P, Q, name)


def save_code(code: CssCode, path: str) -> None:
    with open(path, "w", newline="\n") as fh:
        fh.write(format_code(code))
