"""Exact minimum-weight searches by exhaustive span enumeration.

The span of ``r`` basis rows is split into a table holding all combinations
of the first ``t <= TABLE_BITS`` rows and an outer Gray-code walk over the
other ``r - t`` rows.  Each outer step costs one row XOR plus a vectorised
popcount over the table.  The outer walk is cut into a fixed number of
contiguous chunks, independent of the thread count, and chunk results are
merged by (weight, enumeration position); so the witness is the first
minimiser in enumeration order no matter how many threads run.
"""

from __future__ import annotations

import math
from concurrent.futures import ThreadPoolExecutor
from typing import NamedTuple, Sequence

import numpy as np

from ..errors import BudgetExceeded, Inconsistent
from .bits import BitMatrix, BitVector, index_set
from .linalg import kernel_basis, row_basis, solve

DEFAULT_BUDGET = 1 << 28
TABLE_BITS = 16
N_CHUNKS = 64


class MinWeight(NamedTuple):
    weight: float  # int, or math.inf when the search domain is empty
    witness: BitVector | None


def _mask_words(mask: Sequence[int] | None, n: int) -> np.ndarray:
    if mask is None:
        return BitVector.from_bits(np.ones(n, dtype=np.uint8)).words.copy()
    return BitVector.from_support(index_set(mask, n), n).words.copy()


def _span_table(rows: np.ndarray) -> np.ndarray:
    t, W = rows.shape
    table = np.zeros((1 << t, W), dtype=np.uint64)
    for i in range(t):
        half = 1 << i
        table[half : 2 * half] = table[:half] ^ rows[i]
    return table


def _popcount_rows(words: np.ndarray) -> np.ndarray:
    counts = np.bitwise_count(words)
    if counts.shape[1] == 1:
        return counts[:, 0].astype(np.int64)
    return counts.sum(axis=1, dtype=np.int64)


def _scan_chunk(lo, hi, table_m, table_ok, outer, outer_m, outer_req, x0_m, big):
    """Scan outer Gray-code indices ``lo..hi-1``; return (weight, position)."""
    best_w, best_pos = big, None
    g = lo ^ (lo >> 1)
    x = x0_m.copy()
    for b in range(outer.shape[0]):
        if (g >> b) & 1:
            x ^= outer_m[b]
    for i in range(lo, hi):
        if i != lo:
            b = ((i & -i).bit_length()) - 1
            x ^= outer_m[b]
            g ^= 1 << b
        w = _popcount_rows(table_m ^ x)
        if not (g & outer_req) and table_ok is not None:
            w = np.where(table_ok, w, big)
        j = int(np.argmin(w))
        if w[j] < best_w:
            best_w, best_pos = int(w[j]), (i, j)
            if best_w == 0:
                break
    return best_w, best_pos


def span_min(
    basis: BitMatrix,
    offset: BitVector | None = None,
    *,
    mask: Sequence[int] | None = None,
    require: Sequence[int] = (),
    budget: int = DEFAULT_BUDGET,
    threads: int = 1,
) -> MinWeight:
    """Minimum weight over ``offset + span(basis)``.

    ``mask`` restricts which columns count towards the weight.  ``require``
    lists basis rows of which at least one must appear in the combination;
    with ``require`` nonempty the zero combination is excluded.  Rows are
    not reduced first, so ``2**n_rows`` elements are enumerated.
    """
    n = basis.n_cols
    r = basis.n_rows
    if offset is None:
        offset = BitVector.zeros(n)
    if r > 62 or (1 << r) > budget:
        raise BudgetExceeded(1 << min(r, 200), budget)
    req = set(require)
    if req and any(not 0 <= i < r for i in req):
        raise IndexError("required row index out of range")
    maskw = _mask_words(mask, n)
    big = n + 1

    # free rows fill the table first so required rows land in the outer walk
    order = [i for i in range(r) if i not in req] + sorted(req)
    t = min(r, TABLE_BITS)
    W = basis.words
    tab_rows = W[order[:t]].reshape(t, W.shape[1])
    outer = W[order[t:]].reshape(r - t, W.shape[1])
    table = _span_table(tab_rows)
    table_m = table & maskw
    outer_m = outer & maskw
    x0_m = offset.words & maskw
    outer_req = sum(1 << (b - t) for b, i in enumerate(order) if b >= t and i in req)
    table_ok = None
    if req:
        tab_req = sum(1 << b for b, i in enumerate(order[:t]) if i in req)
        idx = np.arange(1 << t, dtype=np.int64)
        table_ok = (idx & tab_req) != 0

    q = r - t
    steps = 1 << q
    nchunks = min(N_CHUNKS, steps)
    bounds = [(c * steps // nchunks, (c + 1) * steps // nchunks) for c in range(nchunks)]

    def run(bound):
        return _scan_chunk(bound[0], bound[1], table_m, table_ok, outer, outer_m, outer_req, x0_m, big)

    if threads > 1 and nchunks > 1:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            results = list(pool.map(run, bounds))
    else:
        results = [run(b) for b in bounds]

    best_w, best_pos = big, None
    for w, pos in results:
        if pos is not None and w < best_w:
            best_w, best_pos = w, pos
    if best_pos is None:
        return MinWeight(math.inf, None)
    i, j = best_pos
    g = i ^ (i >> 1)
    vec = offset.words ^ table[j]
    for b in range(q):
        if (g >> b) & 1:
            vec = vec ^ outer[b]
    return MinWeight(best_w, BitVector(vec, n))


def min_weight_in_coset(
    v0: BitVector,
    M: BitMatrix,
    *,
    mask: Sequence[int] | None = None,
    budget: int = DEFAULT_BUDGET,
    threads: int = 1,
) -> MinWeight:
    """Minimum weight over the coset ``v0 + rowspace(M)``; may be 0 if ``v0`` is in the span."""
    if v0.n != M.n_cols:
        raise ValueError("vector length does not match column count")
    return span_min(row_basis(M), v0, mask=mask, budget=budget, threads=threads)


def min_nonzero_weight(M: BitMatrix, *, budget: int = DEFAULT_BUDGET, threads: int = 1) -> MinWeight:
    """Classical minimum distance of ``rowspace(M)`` (``inf`` for the zero code)."""
    basis = row_basis(M)
    if basis.n_rows == 0:
        return MinWeight(math.inf, None)
    return span_min(basis, require=range(basis.n_rows), budget=budget, threads=threads)


def min_weight_nontrivial(
    logicals: BitMatrix,
    stabilizers: BitMatrix,
    *,
    budget: int = DEFAULT_BUDGET,
    threads: int = 1,
) -> MinWeight:
    """Minimum weight over ``span(logicals + stabilizers) \\ span(stabilizers)``.

    ``logicals`` must be independent modulo ``stabilizers``.
    """
    if logicals.n_rows == 0:
        return MinWeight(math.inf, None)
    stab = row_basis(stabilizers)
    basis = BitMatrix.stack(stab, logicals)
    require = range(stab.n_rows, basis.n_rows)
    return span_min(basis, require=require, budget=budget, threads=threads)


def min_weight_with_syndrome(
    M: BitMatrix,
    s: BitVector,
    *,
    mask: Sequence[int] | None = None,
    nonzero: bool = False,
    budget: int = DEFAULT_BUDGET,
    threads: int = 1,
) -> MinWeight:
    """Minimum-weight ``x`` with ``M x^T = s``.

    With ``nonzero=True`` and ``s = 0`` the trivial solution is excluded.
    Raises :class:`Inconsistent` when the system has no solution.
    """
    x0 = solve(M, s)
    if x0 is None:
        raise Inconsistent("syndrome is not in the column space")
    K = kernel_basis(M) if M.n_rows else BitMatrix.identity(M.n_cols)
    if nonzero and not s.any():
        if K.n_rows == 0:
            return MinWeight(math.inf, None)
        return span_min(K, require=range(K.n_rows), mask=mask, budget=budget, threads=threads)
    return span_min(K, x0, mask=mask, budget=budget, threads=threads)
