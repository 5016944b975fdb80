"""Gaussian elimination over F2 on bit-packed rows."""

from __future__ import annotations

from typing import Iterable, NamedTuple, Sequence

import numpy as np

from .bits import WORD, BitMatrix, BitVector, complement, index_set, n_words


class RREF(NamedTuple):
    R: BitMatrix
    rank: int
    pivots: tuple[int, ...]


def _eliminate(work: np.ndarray, n_pivot_cols: int) -> list[int]:
    """Reduce ``work`` in place to reduced row-echelon form.

    Pivots are searched only among the first ``n_pivot_cols`` columns; row
    operations act on the full word width, so extra columns carry along
    whatever bookkeeping the caller appended.
    """
    m = work.shape[0]
    pivots: list[int] = []
    r = 0
    for col in range(n_pivot_cols):
        if r == m:
            break
        w, b = divmod(col, WORD)
        colbits = ((work[:, w] >> np.uint64(b)) & np.uint64(1)).astype(bool)
        below = np.flatnonzero(colbits[r:])
        if below.size == 0:
            continue
        p = r + int(below[0])
        if p != r:
            work[[r, p]] = work[[p, r]]
            colbits[[r, p]] = colbits[[p, r]]
        colbits[r] = False
        if colbits.any():
            work[colbits] ^= work[r]
        pivots.append(col)
        r += 1
    return pivots


def rref(M: BitMatrix) -> RREF:
    """Reduced row-echelon form; zero rows are kept at the bottom."""
    work = np.array(M.words, copy=True)
    pivots = _eliminate(work, M.n_cols)
    return RREF(BitMatrix(work, M.n_cols), len(pivots), tuple(pivots))


def rank(M: BitMatrix) -> int:
    if M.n_rows == 0:
        return 0
    return rref(M).rank


def row_basis(M: BitMatrix) -> BitMatrix:
    """Nonzero rows of the RREF: a canonical basis of the row space."""
    red = rref(M)
    return red.R.select_rows(range(red.rank))


def _augmented(M: BitMatrix) -> tuple[np.ndarray, int]:
    """Dense ``[M | I]`` packed into words, for tracking row combinations."""
    m, n = M.shape
    dense = np.concatenate([M.to_dense(), np.eye(m, dtype=np.uint8)], axis=1)
    return BitMatrix.from_dense(dense, n + m).words.copy(), n + m


def _split_augmented(work: np.ndarray, n: int, total: int) -> tuple[BitMatrix, BitMatrix]:
    dense = BitMatrix(work, total).to_dense()
    return BitMatrix.from_dense(dense[:, :n], n), BitMatrix.from_dense(dense[:, n:], total - n)


def kernel_basis(M: BitMatrix) -> BitMatrix:
    """Basis of ``{x : M x^T = 0}``, one row per free column."""
    n = M.n_cols
    if M.n_rows == 0:
        return BitMatrix.identity(n) if n else BitMatrix.zeros(0, 0)
    red = rref(M)
    R = red.R.to_dense()[: red.rank]
    pivset = set(red.pivots)
    free = [j for j in range(n) if j not in pivset]
    out = np.zeros((len(free), n), dtype=np.uint8)
    for i, f in enumerate(free):
        out[i, f] = 1
        for r, p in enumerate(red.pivots):
            if R[r, f]:
                out[i, p] = 1
    return BitMatrix.from_dense(out, n)


def dual_basis(M: BitMatrix) -> BitMatrix:
    """Generator matrix ``M*`` of the dual code: ``M M*^T = 0``, ranks add to ``n``."""
    return kernel_basis(M)


def left_kernel(M: BitMatrix) -> BitMatrix:
    """Basis of the linear relations among rows: ``{a : a M = 0}``."""
    if M.n_rows == 0:
        return BitMatrix.zeros(0, 0)
    return kernel_basis(M.transpose())


def in_rowspace(M: BitMatrix, v: BitVector) -> BitVector | None:
    """Return coefficients ``x`` with ``x M = v``, or ``None`` if ``v`` is not in the row space."""
    if v.n != M.n_cols:
        raise ValueError("vector length does not match column count")
    if not v.any():
        return BitVector.zeros(M.n_rows)
    if M.n_rows == 0:
        return None
    work, total = _augmented(M)
    pivots = _eliminate(work, M.n_cols)
    R, T = _split_augmented(work, M.n_cols, total)
    target = v.bits.copy()
    coeff = np.zeros(M.n_rows, dtype=np.uint8)
    Rd, Td = R.to_dense(), T.to_dense()
    for r, p in enumerate(pivots):
        if target[p]:
            target ^= Rd[r]
            coeff ^= Td[r]
    if target.any():
        return None
    return BitVector.from_bits(coeff)


def solve(M: BitMatrix, s: BitVector) -> BitVector | None:
    """One solution ``x`` of ``M x^T = s``, or ``None``."""
    if s.n != M.n_rows:
        raise ValueError("syndrome length does not match row count")
    if M.n_rows == 0:
        return BitVector.zeros(M.n_cols)
    return in_rowspace(M.transpose(), s)


def inverse(M: BitMatrix) -> BitMatrix:
    """Inverse of a square invertible matrix."""
    m, n = M.shape
    if m != n:
        raise ValueError("matrix is not square")
    work, total = _augmented(M)
    pivots = _eliminate(work, n)
    if len(pivots) != n:
        raise ValueError("matrix is singular")
    return _split_augmented(work, n, total)[1]


def independent_rows(M: BitMatrix, order: Sequence[int] | None = None) -> list[int]:
    """Greedy maximal independent subset of rows, scanned in ``order``."""
    order = list(range(M.n_rows)) if order is None else list(order)
    kept: list[int] = []
    basis = np.zeros((0, n_words(M.n_cols)), dtype=np.uint64)
    current = 0
    for i in order:
        trial = np.concatenate([basis, M.words[i : i + 1]], axis=0)
        r = rank(BitMatrix(trial, M.n_cols))
        if r > current:
            kept.append(i)
            basis = trial
            current = r
    return kept


def puncture(M: BitMatrix, B: Iterable[int]) -> BitMatrix:
    """Keep only the columns in ``B`` (sorted), preserving row order."""
    return M.select_cols(index_set(B, M.n_cols))


def shorten_with_map(M: BitMatrix, B: Iterable[int]) -> tuple[BitMatrix, list[int]]:
    """Shorten ``M`` to ``B`` and report which input rows survived verbatim.

    Rows that already vanish outside ``B`` are kept unchanged and in order;
    the remaining rows are eliminated on the removed columns and every
    combination that cancels there is appended.  The second return value
    lists the input row index of each verbatim row (the appended rows come
    after them).  The row set generates the shortened code; it is a basis
    whenever ``M`` has full row rank.
    """
    B = index_set(B, M.n_cols)
    A = complement(B, M.n_cols)
    dense = M.to_dense()
    split = [i for i in range(M.n_rows) if A and dense[i, list(A)].any()]
    kept = [i for i in range(M.n_rows) if i not in set(split)]
    rows = [dense[i, list(B)] for i in kept]
    if split:
        S = M.select_rows(split)
        rel = left_kernel(S.select_cols(A))
        for a in rel.to_dense():
            combo = np.bitwise_xor.reduce(dense[split][a.astype(bool)], axis=0)
            rows.append(combo[list(B)])
    if not rows:
        return BitMatrix.zeros(0, len(B)), kept
    return BitMatrix.from_dense(np.array(rows, dtype=np.uint8), len(B)), kept


def shorten(M: BitMatrix, B: Iterable[int]) -> BitMatrix:
    """Generating matrix of ``{c[B] : c in rowspace(M), supp(c) within B}``."""
    return shorten_with_map(M, B)[0]
