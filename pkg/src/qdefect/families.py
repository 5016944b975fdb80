"""Deterministic generators for the example code families.

Index maps (frozen; reports refer to them):

toric(L)
    Vertices ``(r, c)`` with ``r, c in range(L)``, periodic.  Horizontal
    edge ``h(r, c)`` joins ``(r, c)``-``(r, c+1)`` and has qubit index
    ``r*L + c``; vertical edge ``v(r, c)`` joins ``(r, c)``-``(r+1, c)`` and
    has index ``L*L + r*L + c``.  Row ``r*L + c`` of ``P`` is the star of
    vertex ``(r, c)``; row ``r*L + c`` of ``Q`` is the plaquette with corner
    ``(r, c)``: edges ``h(r,c), h(r+1,c), v(r,c), v(r,c+1)``.

planar_surface(L)
    Horizontal edges ``h(r, c)``, ``r, c in range(L)``, index ``r*L + c``;
    vertical edges ``v(r, c)``, ``r in range(L-1)``, ``c in 1..L-1``, index
    ``L*L + r*(L-1) + c - 1``.  Plaquette ``(r, c)`` (``r < L-1``) is row
    ``r*L + c`` of ``Q`` with edges ``h(r,c), h(r+1,c)`` and whichever of
    ``v(r,c), v(r,c+1)`` exist.  The top and bottom rows of horizontal edges
    form the smooth boundary (``Q``-column weight 1); star ``(r, c)``,
    ``c in 1..L-1``, is row ``r*(L-1) + c - 1`` of ``P``.  Parameters are
    ``[[L^2 + (L-1)^2, 1, L]]``.
"""

from __future__ import annotations

import random
from dataclasses import dataclass

import numpy as np

from .csscode import CssCode
from .errors import InfeasibleSpec
from .f2core import BitMatrix


def toric(L: int) -> CssCode:
    if L < 2:
        raise ValueError("toric code needs L >= 2")
    n = 2 * L * L

    def h(r, c):
        return (r % L) * L + (c % L)

    def v(r, c):
        return L * L + (r % L) * L + (c % L)

    stars = [[h(r, c), h(r, c - 1), v(r, c), v(r - 1, c)] for r in range(L) for c in range(L)]
    plaqs = [[h(r, c), h(r + 1, c), v(r, c), v(r, c + 1)] for r in range(L) for c in range(L)]
    return CssCode(BitMatrix.from_supports(stars, n), BitMatrix.from_supports(plaqs, n), f"toric({L})")


def planar_qubit(L: int, kind: str, r: int, c: int) -> int:
    """Qubit index of edge ``h(r, c)`` or ``v(r, c)`` in :func:`planar_surface`."""
    if kind == "h":
        return r * L + c
    return L * L + r * (L - 1) + c - 1


def planar_surface(L: int) -> CssCode:
    if L < 2:
        raise ValueError("planar surface code needs L >= 2")
    n = L * L + (L - 1) ** 2

    def h(r, c):
        return planar_qubit(L, "h", r, c)

    def v(r, c):
        return planar_qubit(L, "v", r, c)

    plaqs = []
    for r in range(L - 1):
        for c in range(L):
            edges = [h(r, c), h(r + 1, c)]
            if c >= 1:
                edges.append(v(r, c))
            if c + 1 <= L - 1:
                edges.append(v(r, c + 1))
            plaqs.append(edges)
    stars = []
    for r in range(L):
        for c in range(1, L):
            edges = [h(r, c - 1), h(r, c)]
            if r >= 1:
                edges.append(v(r - 1, c))
            if r <= L - 2:
                edges.append(v(r, c))
            stars.append(edges)
    return CssCode(BitMatrix.from_supports(stars, n), BitMatrix.from_supports(plaqs, n), f"planar_surface({L})")


def with_boundary_row(code: CssCode) -> CssCode:
    """Append the product of all Z generators as an extra (dependent) row of ``Q``."""
    Q = BitMatrix.stack(code.Q, BitMatrix.from_rows([code.Q.xor_all()]))
    return CssCode(code.P, Q, f"{code.name}+boundary" if code.name else "")


def cycle_matrix(L: int) -> BitMatrix:
    """``L x L`` parity-check matrix of the length-``L`` repetition cycle."""
    return BitMatrix.from_supports([[i, (i + 1) % L] for i in range(L)], L)


def hypergraph_product(H1: BitMatrix, H2: BitMatrix, name: str = "") -> CssCode:
    """Tillich-Zemor product: ``H_X = [H1 x I | I x H2^T]``, ``H_Z = [I x H2 | H1^T x I]``."""
    r1, n1 = H1.shape
    r2, n2 = H2.shape
    a, b = H1.to_dense().astype(np.uint8), H2.to_dense().astype(np.uint8)
    hx = np.concatenate([np.kron(a, np.eye(n2, dtype=np.uint8)), np.kron(np.eye(r1, dtype=np.uint8), b.T)], axis=1)
    hz = np.concatenate([np.kron(np.eye(n1, dtype=np.uint8), b), np.kron(a.T, np.eye(r2, dtype=np.uint8))], axis=1)
    n = n1 * n2 + r1 * r2
    return CssCode(BitMatrix.from_dense(hx, n), BitMatrix.from_dense(hz, n), name or "qhp")


@dataclass(frozen=True)
class RegularMatrixSpec:
    row_weight: int
    col_weight: int
    n_rows: int
    n_cols: int
    seed: int = 0

    def __post_init__(self):
        if min(self.row_weight, self.col_weight, self.n_rows, self.n_cols) < 1:
            raise InfeasibleSpec("weights and dimensions must be positive")
        if self.row_weight * self.n_rows != self.col_weight * self.n_cols:
            raise InfeasibleSpec(
                f"row_weight*n_rows = {self.row_weight * self.n_rows} but "
                f"col_weight*n_cols = {self.col_weight * self.n_cols}"
            )
        if self.row_weight > self.n_cols or self.col_weight > self.n_rows:
            raise InfeasibleSpec("a weight exceeds the opposite dimension")


def random_regular_matrix(spec: RegularMatrixSpec, max_retries: int = 1000) -> BitMatrix:
    """Configuration-model sample of a (row_weight, col_weight)-regular matrix.

    Column stubs are shuffled with ``random.Random(seed)`` (Mersenne Twister)
    and matched to row stubs in order; samples with a repeated (row, column)
    pair are rejected and the shuffle repeated from the same stream.
    """
    rng = random.Random(spec.seed)
    row_stubs = [i for i in range(spec.n_rows) for _ in range(spec.row_weight)]
    col_stubs = [j for j in range(spec.n_cols) for _ in range(spec.col_weight)]
    for _ in range(max_retries):
        rng.shuffle(col_stubs)
        edges = set(zip(row_stubs, col_stubs))
        if len(edges) == len(row_stubs):
            dense = np.zeros((spec.n_rows, spec.n_cols), dtype=np.uint8)
            for i, j in edges:
                dense[i, j] = 1
            return BitMatrix.from_dense(dense, spec.n_cols)
    raise InfeasibleSpec(f"no simple sample found in {max_retries} attempts")


FAMILIES = {
    "toric": "toric L: toric code on an L x L torus, L >= 2, [[2L^2, 2, L]]",
    "planar": "planar L: surface code with smooth top/bottom boundary, L >= 2, [[L^2+(L-1)^2, 1, L]]",
    "qhp": "qhp --h1 FILE --h2 FILE: hypergraph product of two sparse-text matrices",
    "regular": "regular ROW_W COL_W N_ROWS N_COLS [--seed S]: random regular matrix, ROW_W*N_ROWS = COL_W*N_COLS",
    "qhp-regular": "qhp-regular ROW_W COL_W N_ROWS N_COLS [--seed S]: qHP of a random regular matrix with itself",
}
